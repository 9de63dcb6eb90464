#pragma once

#include "mschmidt/bipartite.hpp"
#include "mschmidt/coefficients.hpp"
#include "mschmidt/partition.hpp"
#include "mschmidt/random.hpp"
#include "mschmidt/schmidt_number.hpp"
#include "mschmidt/search.hpp"
#include "mschmidt/states.hpp"
#include "mschmidt/tensor.hpp"
#include "mschmidt/types.hpp"
