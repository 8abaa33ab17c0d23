#pragma once
// Umbrella header: the whole library in one include.

#include "conedual/conditions.hpp"
#include "conedual/cone.hpp"
#include "conedual/errors.hpp"
#include "conedual/gallery.hpp"
#include "conedual/geometry.hpp"
#include "conedual/json_io.hpp"
#include "conedual/linalg.hpp"
#include "conedual/line_search.hpp"
#include "conedual/polyhedral.hpp"
#include "conedual/reformulate.hpp"
#include "conedual/scalar.hpp"
#include "conedual/simplex.hpp"
#include "conedual/solve.hpp"
#include "conedual/svg.hpp"
