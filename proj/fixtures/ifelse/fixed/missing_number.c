return 0 ;
