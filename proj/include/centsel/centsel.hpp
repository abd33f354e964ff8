#ifndef CENTSEL_CENTSEL_HPP
#define CENTSEL_CENTSEL_HPP

#include "centsel/error.hpp"
#include "centsel/random.hpp"
#include "centsel/spectral.hpp"
#include "centsel/graph.hpp"
#include "centsel/filters.hpp"
#include "centsel/signals.hpp"
#include "centsel/selection.hpp"
#include "centsel/theory.hpp"

#endif  // CENTSEL_CENTSEL_HPP
