#pragma once

#include "census.hpp"
#include "colourings.hpp"
#include "cyclotomic.hpp"
#include "fastalgo.hpp"
#include "homology.hpp"
#include "loopcoords.hpp"
#include "skeleton.hpp"
#include "triangulation.hpp"
