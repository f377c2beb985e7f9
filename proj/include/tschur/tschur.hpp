#pragma once

// Umbrella header: the whole library in one include.

#include "tschur/block.hpp"
#include "tschur/cmatrix.hpp"
#include "tschur/cpmaps.hpp"
#include "tschur/eig.hpp"
#include "tschur/fuzz.hpp"
#include "tschur/grid.hpp"
#include "tschur/index_map.hpp"
#include "tschur/io.hpp"
#include "tschur/random.hpp"
#include "tschur/rng.hpp"
#include "tschur/schur_tensor.hpp"
