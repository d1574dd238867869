#pragma once

#include "gfai/algebra.hpp"
#include "gfai/base_build.hpp"
#include "gfai/context.hpp"
#include "gfai/error.hpp"
#include "gfai/experiment.hpp"
#include "gfai/fuzzy_set.hpp"
#include "gfai/graph_method.hpp"
#include "gfai/implication.hpp"
#include "gfai/random.hpp"
#include "gfai/text_io.hpp"
