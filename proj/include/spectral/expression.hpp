#pragma once

#include <functional>
#include <string>

namespace spectral {

/// Parse an arithmetic expression in the variable x.  Supported: numeric
/// literals, x, pi, e, + - * / ^, parentheses, and the functions
/// sin cos tan atan exp log sqrt abs sinh cosh tanh.
/// Throws std::invalid_argument on malformed input.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace spectral
