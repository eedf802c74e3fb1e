int main ( ) {
