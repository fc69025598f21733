#pragma once

#include <string>
#include <vector>

#include "twistkit/poly.hpp"

namespace twistkit {

// Parse integer polynomial expressions like "q^2 - 3*q + 1" or "(q+1)^2".
// Identifiers become variables via the global registry.
MPoly parse_poly(const std::string& text);

// Comma-separated list of polynomial expressions.
std::vector<MPoly> parse_poly_list(const std::string& text);

}  // namespace twistkit
