#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fracparts {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A comparison could not be separated within the precision budget.
// Only reachable through dec:... components, whose declared uncertainty
// puts a floor under every interval radius.
struct PrecisionExhausted : Error {
  using Error::Error;
};

// ||alpha.q|| = 0 for an enumerated q; the reciprocal sum and phi are
// undefined there.
struct ResonanceError : Error {
  std::vector<long> q;
  explicit ResonanceError(std::vector<long> qq)
      : Error("resonance: ||alpha.q|| = 0 at q = " + vec_str(qq)), q(std::move(qq)) {}
  static std::string vec_str(const std::vector<long>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  }
};

struct ParseError : Error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct ZeroDenominator : Error {
  ZeroDenominator() : Error("zero denominator") {}
};

struct NonsquareViolation : Error {
  explicit NonsquareViolation(const std::string& d)
      : Error("sqrt argument " + d + " is a perfect square or nonpositive") {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct OutOfRange : Error {
  using Error::Error;
};

struct OutputCapExceeded : Error {
  using Error::Error;
};

struct PairCapExceeded : Error {
  using Error::Error;
};

struct MissingPhi2Q : Error {
  MissingPhi2Q() : Error("gap_upper requires phi(2Q)") {}
};

// A mathematically guaranteed identity failed; always a bug.
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace fracparts
