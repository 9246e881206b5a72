#pragma once

#include "qadic/qalgebra/coefficient.hpp"
#include "qadic/qalgebra/element.hpp"
#include "qadic/qalgebra/embedding.hpp"
#include "qadic/qalgebra/monomial.hpp"
#include "qadic/qalgebra/serialize.hpp"
