#pragma once

// Umbrella header: resampling hypothesis tests for a single mean, the
// distributions they are benchmarked on, and a deterministic Monte Carlo
// harness for measuring rejection rates.

#include "mirrorboot/csv.hpp"
#include "mirrorboot/distributions.hpp"
#include "mirrorboot/hypothesis.hpp"
#include "mirrorboot/quadrature.hpp"
#include "mirrorboot/rng.hpp"
#include "mirrorboot/sample.hpp"
#include "mirrorboot/simulation.hpp"
#include "mirrorboot/special_functions.hpp"
