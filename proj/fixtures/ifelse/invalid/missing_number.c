return ;
