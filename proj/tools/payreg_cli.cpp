#include <cstdio>

int main() {
    std::puts("payreg: placeholder");
    return 0;
}
