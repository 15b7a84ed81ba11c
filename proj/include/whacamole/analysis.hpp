#pragma once

#include "whacamole/analysis/dominance.hpp"
#include "whacamole/analysis/etable.hpp"
#include "whacamole/analysis/lb_sequence.hpp"
#include "whacamole/analysis/randomized_bound.hpp"
#include "whacamole/analysis/strategy.hpp"
