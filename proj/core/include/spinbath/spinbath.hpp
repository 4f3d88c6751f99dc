#pragma once

#include "spinbath/analysis.hpp"
#include "spinbath/bath.hpp"
#include "spinbath/config.hpp"
#include "spinbath/influence.hpp"
#include "spinbath/io.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/propagator.hpp"
#include "spinbath/quadrature.hpp"
#include "spinbath/spectral_density.hpp"
#include "spinbath/system.hpp"
#include "spinbath/time_grid.hpp"
#include "spinbath/version.hpp"
