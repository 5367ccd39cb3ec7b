#ifndef SAVER_SAVER_HPP
#define SAVER_SAVER_HPP

// Umbrella header: sampling-based probabilistic verification of set
// membership for function outputs, with signed-distance set specs,
// distribution-free sample bounds, and set modification.

#include "saver/bounds.hpp"
#include "saver/common.hpp"
#include "saver/csv.hpp"
#include "saver/ecdf.hpp"
#include "saver/model.hpp"
#include "saver/parallel.hpp"
#include "saver/projection.hpp"
#include "saver/rng.hpp"
#include "saver/sdf.hpp"
#include "saver/serialization.hpp"
#include "saver/sets.hpp"
#include "saver/verify.hpp"

#endif  // SAVER_SAVER_HPP
