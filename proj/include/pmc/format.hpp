#pragma once

#include <string>

namespace pmc {

/// Rounds half-up to `decimals` places. Values within 1e-9 (in units of the
/// last kept place) of a half are treated as the half.
double round_half_up(double value, int decimals = 2);

/// Display form used by every table and chart label: half-up, two decimals.
std::string format_fixed2(double value);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_exact(double value);

/// Parses a full decimal string; throws InputError when trailing garbage remains.
double parse_double(const std::string& text);

}  // namespace pmc
