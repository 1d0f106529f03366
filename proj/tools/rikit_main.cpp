#include <cstdio>

int main() {
  std::puts("rikit: CLI not wired yet");
  return 2;
}
