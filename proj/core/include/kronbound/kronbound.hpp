#pragma once

#include "kronbound/banded.hpp"
#include "kronbound/decay_bounds.hpp"
#include "kronbound/dense.hpp"
#include "kronbound/eigen.hpp"
#include "kronbound/errors.hpp"
#include "kronbound/exact_oracle.hpp"
#include "kronbound/quadrature.hpp"
#include "kronbound/report.hpp"
