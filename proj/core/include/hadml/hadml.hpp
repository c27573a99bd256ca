#pragma once

#include "hadml/count_dist.hpp"
#include "hadml/error.hpp"
#include "hadml/hadamard.hpp"
#include "hadml/series.hpp"
#include "hadml/special.hpp"
#include "hadml/verify.hpp"
