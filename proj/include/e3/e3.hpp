#pragma once

#include "e3/allocation.hpp"
#include "e3/cache.hpp"
#include "e3/energy_cost.hpp"
#include "e3/metrics.hpp"
#include "e3/model.hpp"
#include "e3/radio.hpp"
#include "e3/scenario_json.hpp"
#include "e3/sweep.hpp"
#include "e3/validate.hpp"
