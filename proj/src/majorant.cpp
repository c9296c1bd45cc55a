#include "greedy_opt/majorant.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "greedy_opt/errors.hpp"

namespace greedy_opt {

Majorant Majorant::power(double gamma, double q, double domain_bound) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ValidationError("majorant gamma must be positive");
  if (!(q > 1.0 && q <= 2.0)) {
    std::ostringstream os;
    os << "majorant exponent q must be in (1,2], got " << q;
    throw ValidationError(os.str());
  }
  if (!(domain_bound > 0.0))
    throw ValidationError("majorant domain bound must be positive");
  Majorant m;
  m.kind_ = Kind::Power;
  m.gamma_ = gamma;
  m.q_ = q;
  m.domain_bound_ = domain_bound;
  std::ostringstream os;
  os.precision(17);
  os << gamma << "*u^" << q;
  m.label_ = os.str();
  return m;
}

Majorant Majorant::tabulated(std::function<double(double)> fn,
                             double domain_bound, std::string label) {
  if (!fn) throw ValidationError("tabulated majorant needs a function");
  if (!(domain_bound > 0.0) || !std::isfinite(domain_bound))
    throw ValidationError("tabulated majorant needs a finite domain bound");
  Majorant m;
  m.kind_ = Kind::Tabulated;
  m.fn_ = std::move(fn);
  m.domain_bound_ = domain_bound;
  m.label_ = std::move(label);
  return m;
}

double Majorant::operator()(double u) const {
  u = std::abs(u);
  if (u == 0.0) return 0.0;
  if (kind_ == Kind::Power) return gamma_ * std::pow(u, q_);
  return fn_(u);
}

double Majorant::ratio(double u) const {
  u = std::abs(u);
  if (u == 0.0) return 0.0;
  if (kind_ == Kind::Power) return gamma_ * std::pow(u, q_ - 1.0);
  return fn_(u) / u;
}

Majorant Majorant::scaled(double factor) const {
  if (kind_ != Kind::Power)
    throw UnsupportedOperation("only power majorants can be rescaled");
  return power(gamma_ * factor, q_, domain_bound_);
}

bool ratio_is_monotone(const Majorant& mu, double u_lo, double u_hi,
                       int points) {
  if (!(u_lo > 0.0 && u_hi > u_lo) || points < 2)
    throw ValidationError("ratio_is_monotone needs 0 < u_lo < u_hi");
  const double step = std::log(u_hi / u_lo) / (points - 1);
  double prev = mu.ratio(u_lo);
  for (int i = 1; i < points; ++i) {
    const double r = mu.ratio(u_lo * std::exp(step * i));
    if (r < prev) return false;
    prev = r;
  }
  return true;
}

}  // namespace greedy_opt
