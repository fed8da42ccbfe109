#pragma once

#include <string_view>

#include "cdlab/kernel/real.hpp"

namespace cdlab {

/// Evaluates a small arithmetic expression at the working precision.
///
/// Supports numbers, + - * / ^, parentheses, the constants pi and e, and the
/// functions sqrt, exp, log, sin, cos. Example: "(2*sqrt(2)+2)*pi".
Real parse_real_expression(std::string_view text);

}  // namespace cdlab
