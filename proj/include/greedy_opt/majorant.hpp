#pragma once

#include <functional>
#include <limits>
#include <string>

namespace greedy_opt {

/// Upper bound mu(u) on a modulus of smoothness. Either the power law
/// gamma * u^q with q in (1, 2], or an arbitrary tabulated function with
/// mu(0) = 0 and mu(u)/u nondecreasing.
class Majorant {
 public:
  enum class Kind { Power, Tabulated };

  static Majorant power(double gamma, double q,
                        double domain_bound =
                            std::numeric_limits<double>::infinity());
  static Majorant tabulated(std::function<double(double)> fn,
                            double domain_bound, std::string label = "tabulated");

  Kind kind() const noexcept { return kind_; }
  bool is_power() const noexcept { return kind_ == Kind::Power; }
  double gamma() const noexcept { return gamma_; }
  double q() const noexcept { return q_; }
  double domain_bound() const noexcept { return domain_bound_; }
  const std::string& label() const noexcept { return label_; }

  double operator()(double u) const;
  /// mu(u) / u, with the limit 0 at u = 0.
  double ratio(double u) const;

  /// Same majorant with gamma multiplied by `factor` (power kind only).
  Majorant scaled(double factor) const;

 private:
  Majorant() = default;

  Kind kind_ = Kind::Power;
  double gamma_ = 0.0;
  double q_ = 2.0;
  double domain_bound_ = std::numeric_limits<double>::infinity();
  std::function<double(double)> fn_;
  std::string label_;
};

/// Samples u on a log-spaced grid in [u_lo, u_hi] and reports whether
/// mu(u)/u is nondecreasing along it.
bool ratio_is_monotone(const Majorant& mu, double u_lo, double u_hi,
                       int points = 200);

}  // namespace greedy_opt
