#include <iostream>

#include "simdist/simdist.hpp"

int main() {
    std::cout << "simdist stub\n";
    return 0;
}
