#pragma once

#include "sgd/bounds.hpp"
#include "sgd/certify.hpp"
#include "sgd/extremal.hpp"
#include "sgd/formula.hpp"
#include "sgd/graph.hpp"
#include "sgd/rational.hpp"
#include "sgd/reduce.hpp"
#include "sgd/solve.hpp"
