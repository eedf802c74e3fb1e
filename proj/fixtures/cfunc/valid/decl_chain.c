static const char y , z ;
