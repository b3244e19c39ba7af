#include <iostream>

int main() {
  std::cout << "ttcert: not wired up yet\n";
  return 0;
}
