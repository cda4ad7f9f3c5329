// csa/csa.hpp: umbrella header.

#pragma once

#include "csa/analytic.hpp"
#include "csa/bigint.hpp"
#include "csa/brauer.hpp"
#include "csa/census.hpp"
#include "csa/errors.hpp"
#include "csa/field_setup.hpp"
#include "csa/json_io.hpp"
#include "csa/outer.hpp"
#include "csa/permutation.hpp"
#include "csa/primes.hpp"
#include "csa/ramanujan.hpp"
#include "csa/residue.hpp"
#include "csa/setup_io.hpp"
