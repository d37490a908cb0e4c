#pragma once

#include "convolution.hpp"
#include "fields.hpp"
#include "gauss.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "hull3d.hpp"
#include "inequalities.hpp"
#include "io.hpp"
#include "kernel.hpp"
#include "measure.hpp"
#include "minkowski.hpp"
#include "operators.hpp"
#include "polytope.hpp"
#include "suite.hpp"
#include "volumes.hpp"
