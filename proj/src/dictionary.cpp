#include "greedy_opt/dictionary.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "greedy_opt/csv.hpp"
#include "greedy_opt/errors.hpp"

namespace greedy_opt {

bool is_none(const Atom& a) { return std::holds_alternative<NoAtom>(a); }

FiniteDictionary::FiniteDictionary(Matrix atoms, NormTag norm)
    : atoms_(std::move(atoms)), norm_(norm) {
  if (atoms_.rows() == 0 || atoms_.cols() == 0)
    throw ValidationError("dictionary must have at least one atom");
  if (!atoms_.allFinite())
    throw ValidationError("dictionary atoms must be finite");
  for (Eigen::Index j = 0; j < atoms_.cols(); ++j) {
    const double nrm = norm_.norm(atoms_.col(j));
    if (!(nrm > 0.0)) {
      std::ostringstream os;
      os << "dictionary atom " << j << " is zero";
      throw ValidationError(os.str());
    }
    atoms_.col(j) /= nrm;
  }
  coordinate_ = atoms_.cols() == atoms_.rows() &&
                atoms_ == Matrix::Identity(atoms_.rows(), atoms_.rows());
}

FiniteDictionary FiniteDictionary::coordinate(Eigen::Index n, NormTag norm) {
  if (n < 1) throw ValidationError("coordinate dictionary needs n >= 1");
  return FiniteDictionary(Matrix::Identity(n, n), norm);
}

FiniteDictionary FiniteDictionary::gaussian(Eigen::Index n, Eigen::Index count,
                                            std::uint64_t seed, NormTag norm) {
  if (n < 1 || count < 1)
    throw ValidationError("gaussian dictionary needs n >= 1 and count >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix a(n, count);
  for (Eigen::Index j = 0; j < count; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = normal(rng);
  return FiniteDictionary(std::move(a), norm);
}

FiniteDictionary FiniteDictionary::from_csv(const std::string& path,
                                            NormTag norm) {
  return FiniteDictionary(read_matrix_csv(path), norm);
}

double FiniteDictionary::pairing(const Vector& v, Eigen::Index i) const {
  const double* a = atoms_.col(i).data();
  double s = 0.0;
  for (Eigen::Index k = 0; k < atoms_.rows(); ++k) s += v[k] * a[k];
  return s;
}

const NormTag& dictionary_norm(const Dictionary& dict) {
  return std::visit([](const auto& d) -> const NormTag& { return d.norm(); },
                    dict);
}

bool is_sphere(const Dictionary& dict) {
  return std::holds_alternative<SphereDictionary>(dict);
}

std::string describe(const Dictionary& dict) {
  std::ostringstream os;
  if (const auto* f = std::get_if<FiniteDictionary>(&dict)) {
    os << (f->is_coordinate() ? "coordinate" : "finite") << "(n=" << f->dim()
       << ", atoms=" << f->size() << ", " << f->norm().describe() << ")";
  } else {
    os << "sphere(" << std::get<SphereDictionary>(dict).norm().describe()
       << ")";
  }
  return os.str();
}

Vector resolve(const Atom& atom, const Dictionary& dict) {
  if (const auto* ia = std::get_if<IndexedAtom>(&atom)) {
    const auto* f = std::get_if<FiniteDictionary>(&dict);
    if (!f) throw ValidationError("indexed atom used with a sphere dictionary");
    if (ia->index < 0 || ia->index >= f->size())
      throw ValidationError("atom index out of range");
    return static_cast<double>(ia->sign) * f->atoms().col(ia->index);
  }
  if (const auto* ea = std::get_if<ExplicitAtom>(&atom)) return ea->vec;
  throw ValidationError("cannot resolve the empty atom");
}

Vector duality_map(const Vector& v, const NormTag& norm) {
  const double nrm = norm.dual_norm(v);
  if (!(nrm > 0.0)) throw ValidationError("duality map of the zero vector");
  if (norm.is_euclidean()) return v / nrm;
  const double e = norm.dual_p() - 1.0;
  Vector g(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    g[i] = std::copysign(std::pow(std::abs(v[i]) / nrm, e), v[i]);
  return g;
}

namespace {

// Best signed atom from precomputed pairings; + wins ties at equal index.
DualPairing best_signed(const std::vector<double>& pairings) {
  DualPairing best{0.0, NoAtom{}};
  for (std::size_t i = 0; i < pairings.size(); ++i) {
    const double a = std::abs(pairings[i]);
    if (a > best.value) {
      best.value = a;
      best.atom = IndexedAtom{static_cast<Eigen::Index>(i),
                              pairings[i] < 0.0 ? -1 : 1};
    }
  }
  return best;
}

std::vector<double> all_pairings(const Vector& v, const FiniteDictionary& f) {
  if (v.size() != f.dim())
    throw ValidationError("gradient and dictionary dimensions differ");
  std::vector<double> out(static_cast<std::size_t>(f.size()));
  for (Eigen::Index i = 0; i < f.size(); ++i) out[i] = f.pairing(v, i);
  return out;
}

}  // namespace

DualPairing e_d(const Vector& grad_neg, const Dictionary& dict) {
  require_finite(grad_neg, "gradient");
  if (const auto* f = std::get_if<FiniteDictionary>(&dict))
    return best_signed(all_pairings(grad_neg, *f));
  const auto& norm = std::get<SphereDictionary>(dict).norm();
  const double value = norm.dual_norm(grad_neg);
  if (!(value > 0.0)) return {0.0, NoAtom{}};
  return {value, ExplicitAtom{duality_map(grad_neg, norm)}};
}

Selection select_atom_weak(const Vector& grad_neg, const Dictionary& dict,
                           double t, SelectMode mode) {
  if (!(t > 0.0 && t <= 1.0))
    throw ValidationError("weakness parameter t must be in (0,1]");
  require_finite(grad_neg, "gradient");
  const auto* f = std::get_if<FiniteDictionary>(&dict);
  if (!f || mode == SelectMode::Argmax) {
    DualPairing best = e_d(grad_neg, dict);
    return {best.atom, best.value, best.value};
  }
  const std::vector<double> pairings = all_pairings(grad_neg, *f);
  const DualPairing best = best_signed(pairings);
  if (is_none(best.atom)) return {NoAtom{}, 0.0, 0.0};
  const double threshold = t * best.value;
  for (std::size_t i = 0; i < pairings.size(); ++i) {
    for (int sign : {1, -1}) {
      const double p = sign * pairings[i];
      if (p > 0.0 && p >= threshold)
        return {IndexedAtom{static_cast<Eigen::Index>(i), sign}, p, best.value};
    }
  }
  // unreachable: the maximizer always meets the threshold
  return {best.atom, best.value, best.value};
}

AtomValue argmin_atom_by_objective(const Objective& e, const Vector& g,
                                   double c, const Dictionary& dict) {
  const auto* f = std::get_if<FiniteDictionary>(&dict);
  if (!f)
    throw UnsupportedOperation(
        "argmin over the sphere dictionary has no closed form; use a finite "
        "dictionary");
  if (g.size() != f->dim())
    throw ValidationError("point and dictionary dimensions differ");
  AtomValue best{IndexedAtom{0, 1}, 0.0};
  bool have = false;
  for (Eigen::Index i = 0; i < f->size(); ++i) {
    for (int sign : {1, -1}) {
      const double v =
          checked_value(e, g + (c * sign) * f->atoms().col(i));
      if (!have || v < best.value) {
        best = {IndexedAtom{i, sign}, v};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace greedy_opt
