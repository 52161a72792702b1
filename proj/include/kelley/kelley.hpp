#pragma once

#include "kelley/error.hpp"
#include "kelley/rational.hpp"
#include "kelley/model.hpp"
#include "kelley/simplex.hpp"
#include "kelley/witness.hpp"
#include "kelley/intersection.hpp"
#include "kelley/oracle.hpp"
#include "kelley/synthesis.hpp"
#include "kelley/domination.hpp"
#include "kelley/rankings.hpp"
