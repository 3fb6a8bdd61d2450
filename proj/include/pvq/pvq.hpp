#pragma once

// Pyramid vector quantization with a tunable power projection: the library's
// full public surface. Individual headers can be included on their own.

#include "pvq/baselines.hpp"
#include "pvq/benchmark.hpp"
#include "pvq/enumeration.hpp"
#include "pvq/format.hpp"
#include "pvq/geometry.hpp"
#include "pvq/lattice.hpp"
#include "pvq/pyramid.hpp"
#include "pvq/random.hpp"
