#pragma once

#include "analysis.hpp"
#include "characters.hpp"
#include "checked.hpp"
#include "decomposition_cache.hpp"
#include "errors.hpp"
#include "folding.hpp"
#include "parallel.hpp"
#include "rootdata.hpp"
#include "tensor.hpp"
#include "weight.hpp"
