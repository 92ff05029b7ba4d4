#pragma once

#include "stablecalc/dense_poly.hpp"
#include "stablecalc/io.hpp"
#include "stablecalc/lieb_sokal.hpp"
#include "stablecalc/matrix_polys.hpp"
#include "stablecalc/multiaffine.hpp"
#include "stablecalc/paving.hpp"
#include "stablecalc/polarization.hpp"
#include "stablecalc/random.hpp"
#include "stablecalc/rayleigh.hpp"
#include "stablecalc/scalar.hpp"
#include "stablecalc/stable_calculus.hpp"
#include "stablecalc/subset.hpp"
#include "stablecalc/uni_poly.hpp"
#include "stablecalc/verification.hpp"
