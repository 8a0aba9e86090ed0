// Umbrella header.
#pragma once

#include "afdm/analysis.hpp"
#include "afdm/daft.hpp"
#include "afdm/detector.hpp"
#include "afdm/impairments.hpp"
#include "afdm/modem.hpp"
#include "afdm/rng.hpp"
#include "afdm/sim.hpp"
#include "afdm/types.hpp"
