int main ( ) { }
