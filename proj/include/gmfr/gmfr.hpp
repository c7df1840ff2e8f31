#pragma once

#include "gmfr/analytics.hpp"
#include "gmfr/csv.hpp"
#include "gmfr/date.hpp"
#include "gmfr/error.hpp"
#include "gmfr/estimators.hpp"
#include "gmfr/inference.hpp"
#include "gmfr/oracle.hpp"
#include "gmfr/pipeline.hpp"
#include "gmfr/plot.hpp"
#include "gmfr/report.hpp"
#include "gmfr/returns.hpp"
#include "gmfr/risk.hpp"
#include "gmfr/sample.hpp"
#include "gmfr/synthetic.hpp"
#include "gmfr/fixture.hpp"
