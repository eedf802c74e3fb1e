if ( x ) if ( y ) return 1 ; else return 2 ;
