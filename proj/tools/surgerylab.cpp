#include <cstdio>
int main(){printf("cli placeholder\n");return 0;}
