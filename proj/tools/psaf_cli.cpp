#include <iostream>
int main() { std::cout << "psaf\n"; }
