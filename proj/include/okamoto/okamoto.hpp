#pragma once

// Okamoto's function family F_a: construction, derivative analysis and
// fractal dimension of the graph.

#include "differentiability.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "ifs.hpp"
#include "io.hpp"
#include "iteration.hpp"
#include "measure.hpp"
#include "numeric.hpp"
#include "parameter.hpp"
#include "series.hpp"
#include "ternary.hpp"
