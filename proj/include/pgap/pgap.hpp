#pragma once

#include "pgap/amplify.hpp"
#include "pgap/errors.hpp"
#include "pgap/game.hpp"
#include "pgap/models.hpp"
#include "pgap/pauli_string.hpp"
#include "pgap/pauli_sum.hpp"
#include "pgap/random.hpp"
#include "pgap/sparsify.hpp"
#include "pgap/spectra.hpp"
