#include <cstdio>

int main() {
    std::puts("ethos: placeholder");
    return 0;
}
