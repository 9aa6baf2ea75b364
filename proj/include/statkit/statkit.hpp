#pragma once

#include "statkit/categorical.hpp"
#include "statkit/distributions.hpp"
#include "statkit/hypothesis.hpp"
#include "statkit/linalg.hpp"
#include "statkit/regression.hpp"
#include "statkit/rng.hpp"
#include "statkit/spatial.hpp"
#include "statkit/tabular.hpp"
#include "statkit/timeseries.hpp"
#include "statkit/univariate.hpp"
