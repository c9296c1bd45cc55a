#include "greedy_opt/objective.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "greedy_opt/errors.hpp"

namespace greedy_opt {

namespace {

nlohmann::json to_json(const Vector& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

nlohmann::json to_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Vector r = m.row(i).transpose();
    rows.push_back(to_json(r));
  }
  return rows;
}

void require_finite_matrix(const Matrix& m, const std::string& what) {
  if (!m.allFinite()) throw ValidationError(what + " has a non-finite entry");
}

// Upper bound on ||x||_norm in terms of ||x||_2 on R^n.
double euclidean_to_norm_factor(const NormTag& norm, Eigen::Index n) {
  const double e = 1.0 / norm.p() - 0.5;
  return e > 0.0 ? std::pow(static_cast<double>(n), e) : 1.0;
}

class Quadratic final : public Objective {
 public:
  Quadratic(Vector target, double scale)
      : Objective(target.size(), NormTag::euclidean(),
                  Majorant::power(scale / 2.0, 2.0)),
        target_(std::move(target)),
        scale_(scale) {
    const double e0 = value(Vector::Zero(dim_));
    region_radius_ = target_.norm() + std::sqrt(2.0 * (e0 + 2.0) / scale_);
    known_inf_ = KnownInfimum{0.0, target_, true};
  }

  double value(const Vector& x) const override {
    return 0.5 * scale_ * (x - target_).squaredNorm();
  }
  Vector gradient(const Vector& x) const override {
    return scale_ * (x - target_);
  }
  std::string kind() const override { return "quadratic"; }
  nlohmann::json describe() const override {
    return {{"kind", kind()},
            {"target", to_json(target_)},
            {"scale", scale_},
            {"gamma", majorant_.gamma()},
            {"q", majorant_.q()},
            {"region_radius", region_radius_}};
  }

 private:
  std::shared_ptr<Objective> clone() const override {
    return std::make_shared<Quadratic>(*this);
  }

  Vector target_;
  double scale_;
};

class PPower final : public Objective {
 public:
  PPower(Matrix design, Vector response, double p, NormTag norm,
         Majorant majorant)
      : Objective(design.cols(), norm, std::move(majorant)),
        design_(std::move(design)),
        response_(std::move(response)),
        p_(p) {
    // On {E <= E(0) + 2}: ||r||_2 <= ||r||_p <= (p (E(0) + 2))^{1/p}, and
    // ||x||_2 <= (||r||_2 + ||y||_2) / sigma_min(design).
    const double e0 = value(Vector::Zero(dim_));
    Eigen::JacobiSVD<Matrix> svd(design_);
    const double sigma_min =
        design_.rows() >= design_.cols() ? svd.singularValues().minCoeff() : 0.0;
    if (sigma_min > 1e-12 * svd.singularValues().maxCoeff()) {
      const double r_bound = std::pow(p_ * (e0 + 2.0), 1.0 / p_);
      region_radius_ = euclidean_to_norm_factor(norm_, dim_) *
                       (r_bound + response_.norm()) / sigma_min;
    } else {
      region_radius_ = std::numeric_limits<double>::infinity();
    }
  }

  double value(const Vector& x) const override {
    const Vector r = design_ * x - response_;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i)
      acc += std::pow(std::abs(r[i]), p_);
    return acc / p_;
  }
  Vector gradient(const Vector& x) const override {
    const Vector r = design_ * x - response_;
    Vector w(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double a = std::abs(r[i]);
      w[i] = a == 0.0 ? 0.0 : std::copysign(std::pow(a, p_ - 1.0), r[i]);
    }
    return design_.transpose() * w;
  }
  std::string kind() const override { return "p_power"; }
  nlohmann::json describe() const override {
    return {{"kind", kind()},
            {"design", to_json(design_)},
            {"response", to_json(response_)},
            {"p", p_},
            {"norm", norm_.describe()},
            {"gamma", majorant_.gamma()},
            {"q", majorant_.q()},
            {"gamma_rule", "2^(2-p) * max_i ||row_i||_*^p * rows"},
            {"region_radius", region_radius_}};
  }

 private:
  std::shared_ptr<Objective> clone() const override {
    return std::make_shared<PPower>(*this);
  }

  Matrix design_;
  Vector response_;
  double p_;
};

double log1p_exp_neg(double z) {
  // log(1 + exp(-z)) without overflow
  return z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

class Logistic final : public Objective {
 public:
  Logistic(Matrix design, Vector labels, NormTag norm, Majorant majorant)
      : Objective(design.cols(), norm, std::move(majorant)),
        design_(std::move(design)),
        labels_(std::move(labels)) {
    region_radius_ = estimate_region_radius();
  }

  double value(const Vector& x) const override {
    const Vector z = (design_ * x).cwiseProduct(labels_);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) acc += log1p_exp_neg(z[i]);
    return acc;
  }
  Vector gradient(const Vector& x) const override {
    const Vector z = (design_ * x).cwiseProduct(labels_);
    Vector w(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      // sigma(-z) = 1 / (1 + e^z)
      const double s = z[i] >= 0.0 ? std::exp(-z[i]) / (1.0 + std::exp(-z[i]))
                                   : 1.0 / (1.0 + std::exp(z[i]));
      w[i] = -labels_[i] * s;
    }
    return design_.transpose() * w;
  }
  std::string kind() const override { return "logistic"; }
  nlohmann::json describe() const override {
    return {{"kind", kind()},
            {"design", to_json(design_)},
            {"labels", to_json(labels_)},
            {"norm", norm_.describe()},
            {"gamma", majorant_.gamma()},
            {"q", majorant_.q()},
            {"gamma_rule", "(1/8) * sum_i ||row_i||_*^2"},
            {"region_radius", region_radius_},
            {"region_radius_rule", "estimated along 2n+256 rays, x1.25"}};
  }

 private:
  std::shared_ptr<Objective> clone() const override {
    return std::make_shared<Logistic>(*this);
  }

  // Largest lambda with E(lambda d) <= level, or inf if none below 1e8.
  double ray_extent(const Vector& d, double level) const {
    double hi = 1.0;
    while (value(hi * d) <= level) {
      hi *= 2.0;
      if (hi > 1e8) return std::numeric_limits<double>::infinity();
    }
    double lo = 0.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (value(mid * d) <= level ? lo : hi) = mid;
    }
    return hi;
  }

  // The sublevel set is convex but has no closed-form enclosing ball; this
  // takes the farthest boundary point along coordinate and random rays.
  double estimate_region_radius() const {
    const double level = value(Vector::Zero(dim_)) + 2.0;
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    double radius = 0.0;
    // an unbounded ray (linearly separable data) makes the radius infinite
    auto probe = [&](Vector d) {
      d /= norm_.norm(d);
      radius = std::max(radius, ray_extent(d, level));
    };
    for (Eigen::Index i = 0; i < dim_; ++i) {
      probe(Vector::Unit(dim_, i));
      probe(-Vector::Unit(dim_, i));
    }
    for (int k = 0; k < 256; ++k) {
      Vector d(dim_);
      for (Eigen::Index i = 0; i < dim_; ++i) d[i] = normal(rng);
      probe(d);
    }
    return std::isfinite(radius) ? 1.25 * radius
                                 : std::numeric_limits<double>::infinity();
  }

  Matrix design_;
  Vector labels_;
};

class Linear final : public Objective {
 public:
  explicit Linear(Vector a)
      : Objective(a.size(), NormTag::euclidean(),
                  Majorant::tabulated([](double) { return 0.0; },
                                      std::numeric_limits<double>::max(),
                                      "zero")),
        a_(std::move(a)) {
    region_radius_ = std::numeric_limits<double>::infinity();
  }

  double value(const Vector& x) const override { return a_.dot(x); }
  Vector gradient(const Vector&) const override { return a_; }
  std::string kind() const override { return "linear"; }
  nlohmann::json describe() const override {
    return {{"kind", kind()}, {"a", to_json(a_)}};
  }

 private:
  std::shared_ptr<Objective> clone() const override {
    return std::make_shared<Linear>(*this);
  }

  Vector a_;
};

}  // namespace

std::shared_ptr<const Objective> Objective::with_known_inf(
    KnownInfimum inf) const {
  auto copy = clone();
  copy->known_inf_ = std::move(inf);
  return copy;
}

std::shared_ptr<const Objective> Objective::with_majorant(Majorant mu) const {
  auto copy = clone();
  copy->majorant_ = std::move(mu);
  return copy;
}

double checked_value(const Objective& e, const Vector& x) {
  const double v = e.value(x);
  if (!std::isfinite(v)) throw NumericError("objective value is not finite");
  return v;
}

Vector checked_gradient(const Objective& e, const Vector& x) {
  Vector g = e.gradient(x);
  if (!g.allFinite()) throw NumericError("objective gradient is not finite");
  return g;
}

ObjectivePtr quadratic_objective(const Vector& target, double scale) {
  require_finite(target, "quadratic target");
  if (target.size() == 0) throw ValidationError("quadratic target is empty");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw ValidationError("quadratic scale must be positive");
  return std::make_shared<Quadratic>(target, scale);
}

ObjectivePtr p_power_objective(const Matrix& design, const Vector& response,
                               double p, NormTag norm) {
  if (!(p > 1.0 && p <= 2.0)) {
    std::ostringstream os;
    os << "p must be in (1,2], got " << p;
    throw ValidationError(os.str());
  }
  require_finite_matrix(design, "design matrix");
  require_finite(response, "response");
  if (design.rows() == 0 || design.cols() == 0)
    throw ValidationError("design matrix is empty");
  if (design.rows() != response.size())
    throw ValidationError("design rows and response length differ");
  double max_row = 0.0;
  for (Eigen::Index i = 0; i < design.rows(); ++i)
    max_row = std::max(max_row, norm.dual_norm(design.row(i).transpose()));
  if (max_row == 0.0) throw ValidationError("design matrix is zero");
  const double gamma = std::pow(2.0, 2.0 - p) * std::pow(max_row, p) *
                       static_cast<double>(design.rows());
  return std::make_shared<PPower>(design, response, p, norm,
                                  Majorant::power(gamma, p));
}

ObjectivePtr logistic_objective(const Matrix& design, const Vector& labels,
                                NormTag norm) {
  require_finite_matrix(design, "design matrix");
  if (design.rows() == 0 || design.cols() == 0)
    throw ValidationError("design matrix is empty");
  if (design.rows() != labels.size())
    throw ValidationError("design rows and label count differ");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels[i] != 1.0 && labels[i] != -1.0)
      throw ValidationError("logistic labels must be -1 or +1");
  double sum_sq = 0.0;
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    const double r = norm.dual_norm(design.row(i).transpose());
    sum_sq += r * r;
  }
  if (sum_sq == 0.0) throw ValidationError("design matrix is zero");
  return std::make_shared<Logistic>(design, labels, norm,
                                    Majorant::power(sum_sq / 8.0, 2.0));
}

ObjectivePtr linear_objective(const Vector& a) {
  require_finite(a, "linear coefficients");
  return std::make_shared<Linear>(a);
}

}  // namespace greedy_opt
