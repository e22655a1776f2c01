#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace addcomb {

using BigInt = boost::multiprecision::cpp_int;

// Raised when an input exceeds an enumeration or search guard.
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Raised when a computed object fails one of its own postconditions.
// Seeing one of these means a bug (or a false theorem), never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::string to_decimal(const BigInt& v) { return v.str(); }

BigInt pow_big(std::uint64_t base, unsigned exponent);
BigInt binomial(unsigned n, unsigned k);

}  // namespace addcomb
