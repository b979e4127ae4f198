#pragma once

#include "torusdisp/bounds.hpp"
#include "torusdisp/boxes.hpp"
#include "torusdisp/dispersion.hpp"
#include "torusdisp/generators.hpp"
#include "torusdisp/io.hpp"
#include "torusdisp/point_set.hpp"
#include "torusdisp/rational.hpp"
#include "torusdisp/scalar.hpp"
#include "torusdisp/witness.hpp"
