#pragma once

#include "lipsel/metric_space.hpp"
#include "lipsel/lp.hpp"
#include "lipsel/geometry.hpp"
#include "lipsel/set_map.hpp"
#include "lipsel/selection_1d.hpp"
#include "lipsel/refinement.hpp"
#include "lipsel/oracle.hpp"
#include "lipsel/selector.hpp"
#include "lipsel/halfplane.hpp"
