#pragma once

#include <memory>
#include <optional>
#include <string>

#include "greedy_opt/linalg.hpp"
#include "greedy_opt/majorant.hpp"
#include "json.hpp"

namespace greedy_opt {

struct KnownInfimum {
  double value = 0.0;
  Vector minimizer;
  // false when the value comes from a numerical reference run
  bool exact = true;
};

/// A differentiable convex function on R^n together with the data the greedy
/// algorithms and the rate checks need: a majorant of its modulus of
/// smoothness, the radius of a ball enclosing {x : E(x) <= E(0) + 2}, and
/// optionally its infimum.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual std::string kind() const = 0;
  /// Constructor parameters and derived constants, for run manifests.
  virtual nlohmann::json describe() const = 0;

  Eigen::Index dim() const noexcept { return dim_; }
  const NormTag& norm() const noexcept { return norm_; }
  const Majorant& majorant() const noexcept { return majorant_; }
  double region_radius() const noexcept { return region_radius_; }
  const std::optional<KnownInfimum>& known_inf() const noexcept {
    return known_inf_;
  }

  std::shared_ptr<const Objective> with_known_inf(KnownInfimum inf) const;
  /// Copy with a replaced majorant. Used for fault injection.
  std::shared_ptr<const Objective> with_majorant(Majorant mu) const;

 protected:
  Objective(Eigen::Index dim, NormTag norm, Majorant majorant)
      : dim_(dim), norm_(norm), majorant_(std::move(majorant)) {}
  Objective(const Objective&) = default;

  virtual std::shared_ptr<Objective> clone() const = 0;

  Eigen::Index dim_;
  NormTag norm_;
  Majorant majorant_;
  double region_radius_ = 0.0;
  std::optional<KnownInfimum> known_inf_;
};

using ObjectivePtr = std::shared_ptr<const Objective>;

/// E(x), throwing NumericError if the result is not finite.
double checked_value(const Objective& e, const Vector& x);
Vector checked_gradient(const Objective& e, const Vector& x);

/// E(x) = (scale / 2) * ||x - target||_2^2, majorant (scale / 2) u^2.
ObjectivePtr quadratic_objective(const Vector& target, double scale = 1.0);

/// E(x) = sum_i |<row_i, x> - y_i|^p / p for p in (1, 2].
ObjectivePtr p_power_objective(const Matrix& design, const Vector& response,
                               double p, NormTag norm = NormTag::euclidean());

/// E(x) = sum_i log(1 + exp(-y_i <row_i, x>)) with labels in {-1, +1}.
ObjectivePtr logistic_objective(const Matrix& design, const Vector& labels,
                                NormTag norm = NormTag::euclidean());

/// E(x) = <a, x>. Unbounded below; only useful for exercising identities
/// that hold for affine maps.
ObjectivePtr linear_objective(const Vector& a);

}  // namespace greedy_opt
