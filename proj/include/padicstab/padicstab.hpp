#pragma once

#include "padicstab/errors.hpp"
#include "padicstab/rational.hpp"
#include "padicstab/prime.hpp"
#include "padicstab/valuation.hpp"
#include "padicstab/directed.hpp"
#include "padicstab/log_magnitude.hpp"
#include "padicstab/magnitude.hpp"
#include "padicstab/vector.hpp"
#include "padicstab/linalg.hpp"
#include "padicstab/nbeta_norm.hpp"
#include "padicstab/sequence.hpp"
#include "padicstab/expr.hpp"
#include "padicstab/poly_map.hpp"
#include "padicstab/control.hpp"
#include "padicstab/transforms.hpp"
#include "padicstab/hypotheses.hpp"
#include "padicstab/iteration.hpp"
#include "padicstab/bounds.hpp"
#include "padicstab/decompose.hpp"
#include "padicstab/counterexample.hpp"
