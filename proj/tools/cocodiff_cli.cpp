#include "cocodiff/engine.hpp"
int main(){return 0;}
