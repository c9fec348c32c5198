#pragma once

#include "permutwin/alternating.hpp"
#include "permutwin/errors.hpp"
#include "permutwin/extremal.hpp"
#include "permutwin/hard_permutation.hpp"
#include "permutwin/montecarlo.hpp"
#include "permutwin/parallel.hpp"
#include "permutwin/permutation.hpp"
#include "permutwin/plot_data.hpp"
#include "permutwin/random.hpp"
#include "permutwin/shape_count.hpp"
#include "permutwin/twin_search.hpp"
#include "permutwin/version.hpp"
#include "permutwin/weak_twins.hpp"
