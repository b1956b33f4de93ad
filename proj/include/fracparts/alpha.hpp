#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracparts/realnum.hpp"

namespace fracparts {

// Coefficient vector alpha in R^N.  Components are exact rationals, exact
// quadratic surds, or decimal literals with declared uncertainty.
class AlphaVector {
 public:
  explicit AlphaVector(std::vector<RealSpec> components);

  int dim() const { return static_cast<int>(specs_.size()); }
  const std::vector<RealSpec>& specs() const { return specs_; }
  const RealSpec& spec(int i) const { return specs_.at(i); }
  const Scalar& scalar(int i) const { return scalars_.at(i); }
  // All components rational: some alpha.q is an exact integer once |q| is
  // large enough, so reciprocal sums and phi eventually blow up.
  bool resonant() const { return resonant_; }
  bool all_exact() const { return all_exact_; }

  // alpha . q
  Scalar dot(std::span<const long> q) const;
  // Rational upper bound on sum_i |alpha_i|.
  mpq_class abs_sum_upper() const;

 private:
  std::vector<RealSpec> specs_;
  std::vector<Scalar> scalars_;
  bool resonant_ = false;
  bool all_exact_ = false;
};

// Grammar, one component or a comma-separated vector:
//   rat:<num>/<den>
//   quad:(<a>+<b>*sqrt(<d>))/<c>
//   dec:<decimal>@<bits>
AlphaVector parse_alpha(std::string_view text);
RealSpec parse_component(std::string_view text);
std::string render_alpha(const AlphaVector& alpha);

// Enclosure of alpha . q at the requested precision.
IntervalValue inner_product(const AlphaVector& alpha, std::span<const long> q, unsigned bits);

}  // namespace fracparts
