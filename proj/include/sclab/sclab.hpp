#pragma once

#include "sclab/bits.hpp"
#include "sclab/boost_compress.hpp"
#include "sclab/bounds.hpp"
#include "sclab/combinatorics.hpp"
#include "sclab/core.hpp"
#include "sclab/dimensions.hpp"
#include "sclab/errors.hpp"
#include "sclab/game.hpp"
#include "sclab/json_io.hpp"
#include "sclab/parallel.hpp"
#include "sclab/random.hpp"
#include "sclab/regression.hpp"
#include "sclab/selection.hpp"
#include "sclab/separation.hpp"
