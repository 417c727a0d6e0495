#pragma once

// Umbrella header for the whole library.

#include "symm/builders.hpp"
#include "symm/certificate_io.hpp"
#include "symm/control.hpp"
#include "symm/errors.hpp"
#include "symm/linalg.hpp"
#include "symm/lp.hpp"
#include "symm/sdp.hpp"
#include "symm/signature.hpp"
#include "symm/spectral.hpp"
#include "symm/state_space.hpp"
#include "symm/symmetrizability.hpp"
#include "symm/symmetry.hpp"
