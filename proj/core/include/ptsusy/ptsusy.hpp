#pragma once

#include "ptsusy/errors.hpp"
#include "ptsusy/scattering.hpp"
#include "ptsusy/spectral.hpp"
#include "ptsusy/states.hpp"
#include "ptsusy/superpotential.hpp"
#include "ptsusy/tridiagonal.hpp"
#include "ptsusy/types.hpp"
