#pragma once

#include <Eigen/Dense>

#include <string>

namespace greedy_opt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

bool all_finite(const Vector& v);

// Throws ValidationError naming `what` if v has a NaN or Inf entry.
void require_finite(const Vector& v, const std::string& what);

/// The ell_p norm on R^n, p in (1, inf). p == 2 takes the Euclidean fast path.
class NormTag {
 public:
  static NormTag euclidean() { return NormTag(2.0); }
  static NormTag lp(double p);

  double p() const noexcept { return p_; }
  /// Conjugate exponent p / (p - 1).
  double dual_p() const noexcept { return dual_p_; }
  bool is_euclidean() const noexcept { return p_ == 2.0; }

  double norm(const Vector& v) const;
  /// Norm of v viewed as a functional, i.e. the ell_{p'} norm.
  double dual_norm(const Vector& v) const;

  std::string describe() const;

  friend bool operator==(const NormTag& a, const NormTag& b) {
    return a.p_ == b.p_;
  }

 private:
  explicit NormTag(double p);
  double p_;
  double dual_p_;
};

/// (sum |v_i|^p)^{1/p}, scaled by the largest entry to avoid overflow.
double lp_norm(const Vector& v, double p);

double dual_norm(const Vector& v, const NormTag& norm);

}  // namespace greedy_opt
