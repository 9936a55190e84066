#pragma once

#include "hypmetrics/balls.hpp"
#include "hypmetrics/errors.hpp"
#include "hypmetrics/export.hpp"
#include "hypmetrics/geom.hpp"
#include "hypmetrics/halfspace.hpp"
#include "hypmetrics/inclusions.hpp"
#include "hypmetrics/metrics.hpp"
#include "hypmetrics/point.hpp"
#include "hypmetrics/sup_oracle.hpp"
