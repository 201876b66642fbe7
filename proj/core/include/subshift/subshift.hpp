#pragma once

#include "subshift/analysis.hpp"
#include "subshift/construction.hpp"
#include "subshift/demos.hpp"
#include "subshift/embedding.hpp"
#include "subshift/error.hpp"
#include "subshift/hierarchy.hpp"
#include "subshift/lattice.hpp"
#include "subshift/pattern.hpp"
#include "subshift/rational.hpp"
#include "subshift/sparse.hpp"
#include "subshift/stage_io.hpp"
