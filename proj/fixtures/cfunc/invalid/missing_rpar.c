main ( { }
