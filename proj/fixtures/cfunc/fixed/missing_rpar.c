main ( ) { }
