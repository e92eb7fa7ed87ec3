#pragma once

// Umbrella header for the screening library. Individual headers can be
// included on their own; cli.hpp is kept separate because it pulls in the
// command-line and JSON dependencies.

#include "srcs/bench.hpp"
#include "srcs/catalog.hpp"
#include "srcs/csv.hpp"
#include "srcs/data_matrix.hpp"
#include "srcs/parallel.hpp"
#include "srcs/rank.hpp"
#include "srcs/rng.hpp"
#include "srcs/screening.hpp"
#include "srcs/simgen.hpp"
#include "srcs/step_function.hpp"
#include "srcs/survival.hpp"
