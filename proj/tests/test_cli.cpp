#include <catch2/catch_amalgamated.hpp>
#include "simdist/simdist.hpp"
