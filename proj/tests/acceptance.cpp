#include <cstdio>
int main(){ printf("pending\n"); return 1; }
