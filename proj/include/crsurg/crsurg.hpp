#pragma once

#include "crsurg/error.hpp"
#include "crsurg/slope.hpp"
#include "crsurg/core.hpp"
#include "crsurg/front.hpp"
#include "crsurg/homology.hpp"
#include "crsurg/arcs.hpp"
#include "crsurg/slopes.hpp"
#include "crsurg/dividing.hpp"
#include "crsurg/bridge.hpp"
#include "crsurg/round_homology.hpp"
#include "crsurg/dsl.hpp"
