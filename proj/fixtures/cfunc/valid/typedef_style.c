x y ;
