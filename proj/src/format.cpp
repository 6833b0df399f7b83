#include "pmc/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "pmc/error.hpp"

namespace pmc {

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = value * scale;
  return std::floor(scaled + 0.5 + 1e-9) / scale;
}

std::string format_fixed2(double value) {
  char buf[64];
  double rounded = round_half_up(value, 2);
  if (rounded == 0.0) rounded = 0.0;  // no "-0.00"
  std::snprintf(buf, sizeof buf, "%.2f", rounded);
  return buf;
}

std::string format_exact(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw ComputeError("cannot format number");
  return std::string(buf, end);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw InputError("not a number: \"" + text + "\"");
  return value;
}

}  // namespace pmc
