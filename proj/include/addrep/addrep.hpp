// addrep.hpp
// Umbrella header.

#pragma once

#include "analytic.hpp"
#include "common.hpp"
#include "represent.hpp"
#include "sieve.hpp"
#include "thetadata.hpp"
#include "verifier.hpp"
