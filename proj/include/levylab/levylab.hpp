#pragma once

#include "levylab/error.hpp"
#include "levylab/semigroup.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/spectra.hpp"
#include "levylab/functionals.hpp"
#include "levylab/calculus.hpp"
#include "levylab/optimize.hpp"
#include "levylab/oracle.hpp"
#include "levylab/figures.hpp"
