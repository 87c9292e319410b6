#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace tioco {

/// Exact rational used for the quiescence bound M and for concrete delays.
using Rational = boost::rational<std::int64_t>;

/// Parses `p/q` or a plain integer. Decimal notation is rejected.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// `p` when the denominator is 1, `p/q` otherwise (always reduced).
std::string to_string(const Rational& value);

} // namespace tioco
