if ( 0 ) return 1 ; else return 2 ;
