// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "eqrefute/ast.hpp"
#include "eqrefute/pcfg.hpp"

namespace eqrefute {

// Lowers a parsed program to its control-flow graph. Leading constant
// assignments become the initial valuation; every remaining statement gets one
// location, else-blocks get an extra entry location, and the return statement
// becomes the terminal location with a guard-true self-loop. Locations are
// labeled l_init, l_1, l_2, ... in source order, and l_out.
Pcfg lower_to_pcfg(std::shared_ptr<const ProgramAst> prog);

// Both programs must return the same output variable names in the same order.
// Throws ParseError otherwise.
void check_output_compatibility(const Pcfg& a, const Pcfg& b);

}  // namespace eqrefute
