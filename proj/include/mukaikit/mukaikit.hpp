#pragma once

#include "cohlat.hpp"
#include "dynkin.hpp"
#include "errors.hpp"
#include "fmcoh.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "surface.hpp"
#include "walls.hpp"
#include "weyl.hpp"
