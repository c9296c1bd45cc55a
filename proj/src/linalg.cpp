#include "greedy_opt/linalg.hpp"

#include <cmath>
#include <sstream>

#include "greedy_opt/errors.hpp"

namespace greedy_opt {

bool all_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Vector& v, const std::string& what) {
  if (!v.allFinite()) throw ValidationError(what + " has a non-finite entry");
}

NormTag::NormTag(double p) : p_(p), dual_p_(p == 2.0 ? 2.0 : p / (p - 1.0)) {}

NormTag NormTag::lp(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "norm exponent p must lie in (1, inf), got " << p;
    throw ValidationError(os.str());
  }
  return NormTag(p);
}

double lp_norm(const Vector& v, double p) {
  if (p == 2.0) {
    const double n = v.norm();
    return std::isfinite(n) && n > 1e-150 ? n : v.stableNorm();
  }
  const double scale = v.cwiseAbs().maxCoeff();
  if (v.size() == 0 || scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    acc += std::pow(std::abs(v[i]) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

double NormTag::norm(const Vector& v) const { return lp_norm(v, p_); }

double NormTag::dual_norm(const Vector& v) const { return lp_norm(v, dual_p_); }

std::string NormTag::describe() const {
  if (is_euclidean()) return "l2";
  std::ostringstream os;
  os.precision(17);
  os << "l" << p_;
  return os.str();
}

double dual_norm(const Vector& v, const NormTag& norm) {
  require_finite(v, "dual_norm argument");
  return norm.dual_norm(v);
}

}  // namespace greedy_opt
