#pragma once

#include "wcs/errors.hpp"
#include "wcs/log_gamma.hpp"
#include "wcs/gamma_core.hpp"
#include "wcs/algebra.hpp"
#include "wcs/summation.hpp"
#include "wcs/special_series.hpp"
#include "wcs/quadrature.hpp"
#include "wcs/coherent_states.hpp"
#include "wcs/moment_problem.hpp"
