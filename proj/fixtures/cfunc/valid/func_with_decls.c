int main ( ) { int x ; }
