#pragma once

// Umbrella header: exact scheduling toolkit for proportionate flexible flow
// shops of batching machines — model and validation, completion-time lower
// bounds, an online discrete-event simulator with pluggable strategies and
// reactive job sources, brute-force optimum oracles, witness instance
// families, and chart rendering.

#include "pffb/rational.hpp"
#include "pffb/qtime.hpp"
#include "pffb/core.hpp"
#include "pffb/json_io.hpp"
#include "pffb/bounds.hpp"
#include "pffb/engine.hpp"
#include "pffb/strategies.hpp"
#include "pffb/oracle.hpp"
#include "pffb/adversary.hpp"
#include "pffb/gantt.hpp"
