if ( x ) return 1 ; else
