#pragma once

#include "qadic/bimodule/action.hpp"
#include "qadic/bimodule/induced.hpp"
#include "qadic/bimodule/inner.hpp"
#include "qadic/bimodule/x0.hpp"
