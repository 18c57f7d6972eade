#pragma once
// Everything.

#include "ludic/core.hpp"
#include "ludic/morphism.hpp"
#include "ludic/strategy.hpp"
#include "ludic/combinators.hpp"
#include "ludic/gallery.hpp"
#include "ludic/metric.hpp"
#include "ludic/topo.hpp"
#include "ludic/random.hpp"
#include "ludic/io.hpp"
#include "ludic/suites.hpp"
