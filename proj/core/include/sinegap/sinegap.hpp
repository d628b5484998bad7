#pragma once

#include "sinegap/asymptotics.hpp"
#include "sinegap/counting.hpp"
#include "sinegap/errors.hpp"
#include "sinegap/fredholm.hpp"
#include "sinegap/partition.hpp"
#include "sinegap/quadrature.hpp"
#include "sinegap/specfun.hpp"
#include "sinegap/weights.hpp"
