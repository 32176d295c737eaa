#pragma once

// Umbrella header: moments of sublevel sets of homogeneous polynomials and
// exact coefficient recovery from those moments.

#include "levelset/errors.hpp"
#include "levelset/homogeneous.hpp"
#include "levelset/io.hpp"
#include "levelset/moments.hpp"
#include "levelset/monte_carlo.hpp"
#include "levelset/multi_index.hpp"
#include "levelset/numeric.hpp"
#include "levelset/polynomial.hpp"
#include "levelset/quadrature.hpp"
#include "levelset/recovery.hpp"
#include "levelset/sphere.hpp"
