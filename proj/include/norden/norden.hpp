#pragma once

#include "norden/core.hpp"
#include "norden/expr.hpp"
#include "norden/jets.hpp"
#include "norden/sampling.hpp"
#include "norden/report.hpp"
#include "norden/geometry.hpp"
#include "norden/connections.hpp"
#include "norden/conjugation.hpp"
#include "norden/curvature.hpp"
#include "norden/operators.hpp"
#include "norden/checkers.hpp"
#include "norden/catalog.hpp"
#include "norden/specfile.hpp"
#include "norden/suite.hpp"
