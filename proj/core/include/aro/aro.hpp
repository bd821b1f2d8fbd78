#pragma once

#include "aro/adiabatic.hpp"
#include "aro/csv.hpp"
#include "aro/hamiltonian.hpp"
#include "aro/model.hpp"
#include "aro/propagator.hpp"
#include "aro/spectral.hpp"
#include "aro/sweep.hpp"
#include "aro/version.hpp"
