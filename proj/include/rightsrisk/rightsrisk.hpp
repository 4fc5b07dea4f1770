#pragma once

#include "rightsrisk/error.hpp"
#include "rightsrisk/rational.hpp"
#include "rightsrisk/model.hpp"
#include "rightsrisk/dsl.hpp"
#include "rightsrisk/engine.hpp"
#include "rightsrisk/scoring.hpp"
#include "rightsrisk/minimizer.hpp"
#include "rightsrisk/riskmatrix.hpp"
#include "rightsrisk/report.hpp"
