#pragma once

// Umbrella header for the projective shape analysis library.

#include "projshape/charts.hpp"
#include "projshape/constraints.hpp"
#include "projshape/errors.hpp"
#include "projshape/graphs.hpp"
#include "projshape/io.hpp"
#include "projshape/linalg.hpp"
#include "projshape/random.hpp"
#include "projshape/serialize.hpp"
#include "projshape/subspace_numbers.hpp"
#include "projshape/topology.hpp"
#include "projshape/tyler.hpp"
#include "projshape/types.hpp"
