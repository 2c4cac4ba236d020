#pragma once

// Umbrella header.

#include "scpr/bench.hpp"
#include "scpr/brute_force.hpp"
#include "scpr/cardinality_search.hpp"
#include "scpr/core.hpp"
#include "scpr/fingerprint.hpp"
#include "scpr/fitness.hpp"
#include "scpr/generator.hpp"
#include "scpr/heuristics.hpp"
#include "scpr/ilp.hpp"
#include "scpr/io.hpp"
#include "scpr/maxsat.hpp"
#include "scpr/reduce.hpp"
#include "scpr/rng.hpp"
#include "scpr/solvers.hpp"
