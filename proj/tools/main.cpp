#include <cstdio>

#include "wavekit.h"

int main() {
    std::printf("wavekit %s\n", wk_version());
    return 0;
}
