#pragma once

#include <psi_opcalc/rational.hpp>
#include <psi_opcalc/psi_family.hpp>
#include <psi_opcalc/polynomial.hpp>
#include <psi_opcalc/operator_series.hpp>
#include <psi_opcalc/appell.hpp>
#include <psi_opcalc/solver.hpp>
#include <psi_opcalc/identities.hpp>
