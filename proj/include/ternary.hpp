#pragma once

#include "ternary/arith.hpp"
#include "ternary/form.hpp"
#include "ternary/reduce.hpp"
#include "ternary/sublattice.hpp"
#include "ternary/local.hpp"
#include "ternary/spinor.hpp"
#include "ternary/genus.hpp"
#include "ternary/watson.hpp"
#include "ternary/htype.hpp"
#include "ternary/correspondence.hpp"
