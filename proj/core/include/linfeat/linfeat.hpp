#pragma once

// Umbrella header.

#include "linfeat/casestudy.hpp"
#include "linfeat/dataset.hpp"
#include "linfeat/dual.hpp"
#include "linfeat/errors.hpp"
#include "linfeat/features.hpp"
#include "linfeat/linearization.hpp"
#include "linfeat/model_selection.hpp"
#include "linfeat/path_analysis.hpp"
#include "linfeat/regression.hpp"
#include "linfeat/types.hpp"
