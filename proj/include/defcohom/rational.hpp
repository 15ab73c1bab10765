// Exact rational scalars. All arithmetic in the engine happens over Q;
// there is no floating point anywhere in the core.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace defcohom {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses "p", "-p" or "p/q" with q > 0 after normalization. Rejects
// anything else ("1.5", "1/0", empty, trailing junk).
std::optional<Rational> parse_rational(const std::string& text);

// Canonical form "p" or "p/q" with q > 1.
std::string rational_str(const Rational& r);

} // namespace defcohom
