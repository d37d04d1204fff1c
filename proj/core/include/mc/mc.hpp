#pragma once

#include "mc/analysis.hpp"
#include "mc/budget.hpp"
#include "mc/codes.hpp"
#include "mc/components.hpp"
#include "mc/cube_set.hpp"
#include "mc/errors.hpp"
#include "mc/executor.hpp"
#include "mc/function_spec.hpp"
#include "mc/netlist.hpp"
#include "mc/ternary.hpp"
