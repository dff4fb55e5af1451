#pragma once

#include "extensor/acceptance.hpp"
#include "extensor/eqrel.hpp"
#include "extensor/error.hpp"
#include "extensor/generators.hpp"
#include "extensor/hyperext.hpp"
#include "extensor/io.hpp"
#include "extensor/orient.hpp"
#include "extensor/palette.hpp"
#include "extensor/perm.hpp"
#include "extensor/random.hpp"
#include "extensor/relational.hpp"
#include "extensor/subset_map.hpp"
#include "extensor/subsets.hpp"
#include "extensor/tourney.hpp"
#include "extensor/treeset.hpp"
