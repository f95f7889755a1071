#pragma once

// Umbrella header: the complete exact engine for holomorphic families of
// finite-dimensional chain complexes with a pole parameter, together with
// its JSON problem-file front-end.
//
// json_io.hpp and cli.hpp require the vendored single-header JSON library
// (vendor/json.hpp) on the include path; the CMake interface target wires
// this up.  Everything else is self-contained modulo Boost.Multiprecision.

#include "scalar.hpp"
#include "linalg.hpp"
#include "series.hpp"
#include "map_family.hpp"
#include "complex_family.hpp"
#include "indicial.hpp"
#include "germ_cohom.hpp"
#include "pairing.hpp"
#include "reduction.hpp"
#include "mellin.hpp"
#include "parallel.hpp"
#include "polyroots.hpp"
#include "spectrum.hpp"
#include "ibc.hpp"
#include "generator.hpp"
#include "json_io.hpp"
#include "cli.hpp"
