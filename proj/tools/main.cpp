#include <cstdio>

int main() {
    std::printf("rangebound: command-line interface pending\n");
    return 0;
}
