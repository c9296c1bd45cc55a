#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "greedy_opt/linalg.hpp"
#include "greedy_opt/objective.hpp"

namespace greedy_opt {

/// Signed reference to a stored atom of a finite dictionary.
struct IndexedAtom {
  Eigen::Index index = 0;
  int sign = 1;
  friend bool operator==(const IndexedAtom&, const IndexedAtom&) = default;
};

/// Unit-sphere atom, carried by value.
struct ExplicitAtom {
  Vector vec;
};

/// Returned when the dual pairing is zero: the caller must stop.
struct NoAtom {};

using Atom = std::variant<NoAtom, IndexedAtom, ExplicitAtom>;

bool is_none(const Atom& a);

/// Symmetric finite dictionary {+a_i, -a_i}. Atoms are columns of an n x N
/// matrix, normalized to unit norm at construction.
class FiniteDictionary {
 public:
  FiniteDictionary(Matrix atoms, NormTag norm = NormTag::euclidean());

  static FiniteDictionary coordinate(Eigen::Index n,
                                     NormTag norm = NormTag::euclidean());
  static FiniteDictionary gaussian(Eigen::Index n, Eigen::Index count,
                                   std::uint64_t seed,
                                   NormTag norm = NormTag::euclidean());
  /// One atom per column; a non-numeric first row is treated as a header.
  static FiniteDictionary from_csv(const std::string& path,
                                   NormTag norm = NormTag::euclidean());

  Eigen::Index dim() const noexcept { return atoms_.rows(); }
  Eigen::Index size() const noexcept { return atoms_.cols(); }
  const NormTag& norm() const noexcept { return norm_; }
  const Matrix& atoms() const noexcept { return atoms_; }
  bool is_coordinate() const noexcept { return coordinate_; }

  /// <v, a_i> summed in index order.
  double pairing(const Vector& v, Eigen::Index i) const;

 private:
  Matrix atoms_;
  NormTag norm_;
  bool coordinate_ = false;
};

/// The unit sphere {g : ||g|| = 1} of (R^n, norm).
class SphereDictionary {
 public:
  explicit SphereDictionary(NormTag norm = NormTag::euclidean()) : norm_(norm) {}
  const NormTag& norm() const noexcept { return norm_; }

 private:
  NormTag norm_;
};

using Dictionary = std::variant<FiniteDictionary, SphereDictionary>;

const NormTag& dictionary_norm(const Dictionary& dict);
bool is_sphere(const Dictionary& dict);
std::string describe(const Dictionary& dict);

/// Vector represented by a non-empty atom.
Vector resolve(const Atom& atom, const Dictionary& dict);

/// Sign(v_i) |v_i|^{p'-1} / ||v||_{p'}^{p'-1}: the unique unit vector g with
/// <v, g> = ||v||_{p'}. v must be nonzero.
Vector duality_map(const Vector& v, const NormTag& norm);

struct DualPairing {
  double value = 0.0;
  Atom atom;
};

/// E_D at a point, given grad_neg = -E'(x): sup over the dictionary of
/// <grad_neg, g>, with the maximizing atom. Ties go to the lowest index, then
/// to sign +. Zero value returns NoAtom.
DualPairing e_d(const Vector& grad_neg, const Dictionary& dict);

enum class SelectMode { Argmax, FirstAbove };

struct Selection {
  Atom atom;
  double pairing = 0.0;
  double e_d = 0.0;
};

/// Any atom with <grad_neg, g> >= t * E_D. FirstAbove scans signed atoms in
/// index order (+ before -) and returns the first that qualifies; on the
/// sphere it coincides with Argmax.
Selection select_atom_weak(const Vector& grad_neg, const Dictionary& dict,
                           double t, SelectMode mode = SelectMode::Argmax);

struct AtomValue {
  IndexedAtom atom;
  double value = 0.0;
};

/// argmin over signed atoms of E(G + c g), by full scan. Finite only.
AtomValue argmin_atom_by_objective(const Objective& e, const Vector& g,
                                   double c, const Dictionary& dict);

}  // namespace greedy_opt
