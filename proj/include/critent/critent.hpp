#pragma once

#include "critent/analysis.hpp"
#include "critent/denmat.hpp"
#include "critent/dimer.hpp"
#include "critent/edoracle.hpp"
#include "critent/error.hpp"
#include "critent/io.hpp"
#include "critent/ising2d.hpp"
#include "critent/numerics.hpp"
#include "critent/random_states.hpp"
#include "critent/scaling.hpp"
#include "critent/sweep.hpp"
#include "critent/tfim.hpp"
