#pragma once

#include "simdist/blob.hpp"
#include "simdist/compressor.hpp"
#include "simdist/counts.hpp"
#include "simdist/distance_matrix.hpp"
#include "simdist/errors.hpp"
#include "simdist/ncd.hpp"
#include "simdist/ngd.hpp"
#include "simdist/normality.hpp"
#include "simdist/quartet.hpp"
#include "simdist/termindex.hpp"
#include "simdist/text_norm.hpp"
