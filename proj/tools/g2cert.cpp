#include <iostream>
int main() { std::cout << "g2cert placeholder\n"; return 0; }
