#pragma once

#include "gpdf/budget.hpp"
#include "gpdf/catalog.hpp"
#include "gpdf/construct.hpp"
#include "gpdf/core.hpp"
#include "gpdf/exact_cover.hpp"
#include "gpdf/feasibility.hpp"
#include "gpdf/goc.hpp"
#include "gpdf/search.hpp"
#include "gpdf/synth.hpp"
#include "gpdf/verify.hpp"
