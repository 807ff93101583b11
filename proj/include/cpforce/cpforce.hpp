#pragma once
//! @file cpforce.hpp
//! @brief Umbrella header.
#include "asymptotics.hpp"
#include "atom_response.hpp"
#include "config.hpp"
#include "core.hpp"
#include "correlators.hpp"
#include "energy.hpp"
#include "quadrature.hpp"
#include "sweep.hpp"
#include "validation.hpp"
