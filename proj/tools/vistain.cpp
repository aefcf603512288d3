#include <cstdio>

int main() {
  std::puts("vistain: placeholder");
  return 0;
}
