#pragma once

#include "whacamole/adversaries.hpp"
#include "whacamole/algorithms.hpp"
#include "whacamole/analysis.hpp"
#include "whacamole/engine.hpp"
#include "whacamole/error.hpp"
#include "whacamole/experiment.hpp"
#include "whacamole/generators.hpp"
#include "whacamole/json_io.hpp"
#include "whacamole/model.hpp"
#include "whacamole/offline.hpp"
#include "whacamole/timeline.hpp"
#include "whacamole/verify.hpp"
