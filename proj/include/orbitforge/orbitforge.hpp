#pragma once

#include "orbitforge/flow.hpp"
#include "orbitforge/io.hpp"
#include "orbitforge/lattice.hpp"
#include "orbitforge/linalg.hpp"
#include "orbitforge/nicecrit.hpp"
#include "orbitforge/nilgeom.hpp"
#include "orbitforge/parallel.hpp"
#include "orbitforge/ratgeom.hpp"
#include "orbitforge/rational.hpp"
#include "orbitforge/reps.hpp"
#include "orbitforge/simplex.hpp"
#include "orbitforge/surd.hpp"
#include "orbitforge/ternary.hpp"
