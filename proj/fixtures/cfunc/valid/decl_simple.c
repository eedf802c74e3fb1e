int x ;
