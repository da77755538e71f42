#pragma once

#include <string>

namespace wmbench {

/// Shortest decimal string that parses back to exactly `value`, laid out
/// like Python's repr(float): positional for decimal exponents in [-4, 16),
/// scientific ("1e-07", "2.5e+16") otherwise, integral values keep ".0".
/// Throws NonFinite for NaN and infinities.
std::string format_real(double value);

}  // namespace wmbench
