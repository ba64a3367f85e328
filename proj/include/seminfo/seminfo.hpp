#pragma once

// Semantic information measures, the rate-fidelity tradeoff R(G), and
// purposive range control. Header-only; include this umbrella or the
// individual modules.

#include "seminfo/channels.hpp"
#include "seminfo/control.hpp"
#include "seminfo/errors.hpp"
#include "seminfo/families.hpp"
#include "seminfo/grid.hpp"
#include "seminfo/pmf.hpp"
#include "seminfo/rate_fidelity.hpp"
#include "seminfo/scenario.hpp"
#include "seminfo/semantics.hpp"
