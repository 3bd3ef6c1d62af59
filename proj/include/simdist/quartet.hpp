#pragma once

#include "simdist/quartet_search.hpp"
#include "simdist/quartet_tree.hpp"
#include "simdist/tree_io.hpp"
