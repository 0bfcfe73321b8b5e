#pragma once

#include "tetra/acceptance.hpp"
#include "tetra/config.hpp"
#include "tetra/contraction.hpp"
#include "tetra/counterexample.hpp"
#include "tetra/error.hpp"
#include "tetra/geometry.hpp"
#include "tetra/json_io.hpp"
#include "tetra/linalg.hpp"
#include "tetra/matrix.hpp"
#include "tetra/model.hpp"
#include "tetra/point.hpp"
#include "tetra/poly3.hpp"
#include "tetra/random.hpp"
#include "tetra/triple.hpp"
