#pragma once

// Umbrella header for the eitsim library.

#include "eitsim/constants.hpp"
#include "eitsim/csv.hpp"
#include "eitsim/doppler.hpp"
#include "eitsim/errors.hpp"
#include "eitsim/fft.hpp"
#include "eitsim/lambda_system.hpp"
#include "eitsim/lineshape.hpp"
#include "eitsim/pulse.hpp"
#include "eitsim/quadrature.hpp"
#include "eitsim/scenario.hpp"
#include "eitsim/transit.hpp"
#include "eitsim/units.hpp"
