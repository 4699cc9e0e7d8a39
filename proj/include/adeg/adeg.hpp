#pragma once

// Umbrella header: exact polynomial symmetrization, approximate-degree LPs,
// and the robust-region reduction pipeline.

#include "adeg/adeg_lp.hpp"
#include "adeg/bernstein.hpp"
#include "adeg/blockprod.hpp"
#include "adeg/boolfn.hpp"
#include "adeg/bounds.hpp"
#include "adeg/errors.hpp"
#include "adeg/interval.hpp"
#include "adeg/laurent.hpp"
#include "adeg/multipoly.hpp"
#include "adeg/poly_io.hpp"
#include "adeg/rational.hpp"
#include "adeg/reduction.hpp"
#include "adeg/region.hpp"
#include "adeg/search.hpp"
#include "adeg/simplex.hpp"
#include "adeg/symmetrize.hpp"
