#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace nrh {

// Exact arbitrary-precision rational scalar. cpp_rational keeps values in
// canonical reduced form (gcd 1, positive denominator) automatically.
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& r) { return r.str(); }

// Parses "p", "-p", "p/q". Rejects zero denominators and garbage.
std::optional<Rat> parse_rational(const std::string& s);

}  // namespace nrh
