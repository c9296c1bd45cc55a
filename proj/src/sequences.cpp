#include <cmath>
#include <sstream>

#include "greedy_opt/errors.hpp"
#include "greedy_opt/greedy.hpp"

namespace greedy_opt {

namespace {

void check_weakness(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "weakness parameter must be in (0,1], got " << t;
    throw ValidationError(os.str());
  }
}

}  // namespace

WeaknessSequence WeaknessSequence::constant(double t) {
  check_weakness(t);
  WeaknessSequence w;
  w.kind_ = Kind::Constant;
  w.t_ = t;
  return w;
}

WeaknessSequence WeaknessSequence::explicit_list(std::vector<double> values) {
  if (values.empty()) throw ValidationError("empty weakness sequence");
  for (double t : values) check_weakness(t);
  WeaknessSequence w;
  w.kind_ = Kind::Explicit;
  w.values_ = std::move(values);
  return w;
}

WeaknessSequence WeaknessSequence::formula(
    std::function<double(std::size_t)> fn, std::string label) {
  if (!fn) throw ValidationError("weakness formula is empty");
  WeaknessSequence w;
  w.kind_ = Kind::Formula;
  w.fn_ = std::move(fn);
  w.label_ = std::move(label);
  return w;
}

double WeaknessSequence::at(std::size_t k) const {
  if (k == 0) throw ValidationError("weakness sequence is 1-based");
  switch (kind_) {
    case Kind::Constant:
      return t_;
    case Kind::Explicit:
      return values_[std::min(k, values_.size()) - 1];
    case Kind::Formula: {
      const double t = fn_(k);
      check_weakness(t);
      return t;
    }
  }
  return t_;
}

bool WeaknessSequence::nonincreasing_up_to(std::size_t m) const {
  if (kind_ == Kind::Constant) return true;
  for (std::size_t k = 2; k <= m; ++k)
    if (at(k) > at(k - 1)) return false;
  return true;
}

nlohmann::json WeaknessSequence::describe() const {
  switch (kind_) {
    case Kind::Constant:
      return {{"kind", "constant"}, {"t", t_}};
    case Kind::Explicit:
      return {{"kind", "explicit"}, {"values", values_}};
    case Kind::Formula:
      return {{"kind", "formula"}, {"label", label_}};
  }
  return {};
}

CoefficientSequence CoefficientSequence::explicit_list(
    std::vector<double> values) {
  if (values.empty()) throw ValidationError("empty coefficient list");
  for (double c : values)
    if (!(c >= 0.0) || !std::isfinite(c))
      throw ValidationError("coefficients must be finite and nonnegative");
  CoefficientSequence s;
  s.kind_ = Kind::Explicit;
  s.values_ = std::move(values);
  return s;
}

CoefficientSequence CoefficientSequence::constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw ValidationError("constant coefficient must be finite and >= 0");
  CoefficientSequence s;
  s.kind_ = Kind::Constant;
  s.c_ = c;
  return s;
}

CoefficientSequence CoefficientSequence::power(double c, double s) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw ValidationError("power coefficient c must be positive");
  if (!(s > 0.0 && s <= 1.0))
    throw ValidationError("power exponent s must be in (0,1]");
  CoefficientSequence seq;
  seq.kind_ = Kind::Power;
  seq.c_ = c;
  seq.s_ = s;
  return seq;
}

std::optional<double> CoefficientSequence::at(std::size_t k) const {
  if (k == 0) throw ValidationError("coefficient sequence is 1-based");
  switch (kind_) {
    case Kind::Explicit:
      if (k > values_.size()) return std::nullopt;
      return values_[k - 1];
    case Kind::Constant:
      return c_;
    case Kind::Power:
      return c_ * std::pow(static_cast<double>(k), -s_);
  }
  return std::nullopt;
}

nlohmann::json CoefficientSequence::describe() const {
  switch (kind_) {
    case Kind::Explicit:
      return {{"kind", "explicit"}, {"values", values_}};
    case Kind::Constant:
      return {{"kind", "constant"}, {"value", c_}};
    case Kind::Power:
      return {{"kind", "power"}, {"c", c_}, {"s", s_}};
  }
  return {};
}

double power_sum_upper_bound(double a) {
  if (!(a > 1.0)) throw ValidationError("power sum diverges for exponent <= 1");
  constexpr long kTerms = 1000000;
  double sum = 0.0;
  // smallest terms first
  for (long k = kTerms; k >= 1; --k) sum += std::pow(static_cast<double>(k), -a);
  return sum + std::pow(static_cast<double>(kTerms), 1.0 - a) / (a - 1.0);
}

CsSequence make_cs_sequence(double t, double q, double gamma) {
  check_weakness(t);
  if (!(q > 1.0 && q <= 2.0)) throw ValidationError("q must be in (1,2]");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ValidationError("gamma must be positive");
  const double s = (t + 1.0) / (t + q);
  if (!(s * q > 1.0)) {
    std::ostringstream os;
    os << "s*q = " << s * q << " <= 1: sum of k^{-sq} diverges";
    throw ValidationError(os.str());
  }
  const double z = power_sum_upper_bound(s * q);
  const double c = std::pow(gamma * z, -1.0 / q);
  return {CoefficientSequence::power(c, s), s, c, z};
}

}  // namespace greedy_opt
