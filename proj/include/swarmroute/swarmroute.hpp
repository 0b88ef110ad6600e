#pragma once

#include "swarmroute/bench.hpp"
#include "swarmroute/decoder.hpp"
#include "swarmroute/exact.hpp"
#include "swarmroute/graph.hpp"
#include "swarmroute/pso.hpp"
#include "swarmroute/random.hpp"
#include "swarmroute/router.hpp"
