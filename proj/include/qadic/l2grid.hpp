#pragma once

#include "qadic/l2grid/eta.hpp"
#include "qadic/l2grid/fourier.hpp"
#include "qadic/l2grid/grid_function.hpp"
#include "qadic/l2grid/symbol.hpp"
