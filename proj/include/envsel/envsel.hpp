#pragma once

// Model-order selection on non-increasing error curves: linear-penalty
// criteria (AIC/BIC/HQIC/UAED), the effective-number-of-variables index, and
// confidence measures for a chosen model size.

#include <envsel/confidence.hpp>
#include <envsel/criteria.hpp>
#include <envsel/curve.hpp>
#include <envsel/env.hpp>
#include <envsel/errors.hpp>
#include <envsel/io.hpp>
#include <envsel/modelfit.hpp>
#include <envsel/report.hpp>
