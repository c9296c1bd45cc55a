#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "greedy_opt/dictionary.hpp"
#include "greedy_opt/errors.hpp"

using namespace greedy_opt;

namespace {
Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

IndexedAtom indexed(const Atom& a) {
  REQUIRE(std::holds_alternative<IndexedAtom>(a));
  return std::get<IndexedAtom>(a);
}
}  // namespace

TEST_CASE("e_d on the coordinate dictionary") {
  const Dictionary d = FiniteDictionary::coordinate(2);
  const DualPairing r = e_d(vec({1, 2}), d);
  CHECK(r.value == 2.0);
  CHECK(indexed(r.atom) == IndexedAtom{1, 1});
  CHECK(is_none(e_d(Vector::Zero(2), d).atom));
  CHECK(e_d(Vector::Zero(2), d).value == 0.0);
}

TEST_CASE("e_d on the sphere") {
  const Dictionary s = SphereDictionary();
  const DualPairing r = e_d(vec({1, 2}), s);
  CHECK(r.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  const Vector g = resolve(r.atom, s);
  CHECK(g[0] == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(g[1] == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(is_none(e_d(Vector::Zero(2), s).atom));
}

TEST_CASE("sphere duality map: Hoelder equality and unit norm") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (double p : {1.25, 1.5, 2.0, 3.0, 5.0}) {
    const NormTag norm = NormTag::lp(p);
    const Dictionary s = SphereDictionary(norm);
    for (int k = 0; k < 100; ++k) {
      Vector v(7);
      for (int i = 0; i < 7; ++i) v[i] = normal(rng);
      const DualPairing r = e_d(v, s);
      const Vector g = resolve(r.atom, s);
      CHECK(std::abs(v.dot(g) - dual_norm(v, norm)) <= 1e-12 * r.value);
      CHECK(std::abs(norm.norm(g) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("e_d agrees with a naive scan and is symmetric") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  for (Eigen::Index count : {1, 7, 100, 1000}) {
    const FiniteDictionary fd = FiniteDictionary::gaussian(12, count, 99);
    const Dictionary d = fd;
    for (int k = 0; k < 20; ++k) {
      Vector v(12);
      for (int i = 0; i < 12; ++i) v[i] = normal(rng);
      double best = -INFINITY;
      IndexedAtom arg;
      for (Eigen::Index i = 0; i < count; ++i) {
        double dot = 0.0;
        for (Eigen::Index j = 0; j < 12; ++j) dot += v[j] * fd.atoms()(j, i);
        for (int sign : {1, -1})
          if (sign * dot > best) {
            best = sign * dot;
            arg = {i, sign};
          }
      }
      const DualPairing r = e_d(v, d);
      CHECK(r.value == best);
      CHECK(indexed(r.atom) == arg);
      CHECK(e_d(-v, d).value == r.value);
    }
  }
}

TEST_CASE("ties go to the lowest index, then sign +") {
  const Dictionary d = FiniteDictionary::coordinate(3);
  CHECK(indexed(e_d(vec({1, 1, 1}), d).atom) == IndexedAtom{0, 1});
  CHECK(indexed(e_d(vec({-2, 2, 0}), d).atom) == IndexedAtom{0, -1});
  CHECK(indexed(e_d(vec({0, -3, 3}), d).atom) == IndexedAtom{1, -1});
}

TEST_CASE("atoms are normalized; zero atoms are rejected") {
  Matrix a(2, 2);
  a << 3, 0, 4, 2;
  const FiniteDictionary d(a);
  CHECK(d.atoms().col(0).norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.atoms()(1, 1) == 1.0);
  const FiniteDictionary d3(a, NormTag::lp(3.0));
  CHECK(lp_norm(d3.atoms().col(0), 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  Matrix z(2, 2);
  z << 1, 0, 0, 0;
  CHECK_THROWS_AS(FiniteDictionary{z}, ValidationError);
}

TEST_CASE("select_atom_weak") {
  const Dictionary d = FiniteDictionary::coordinate(2);
  const Selection a = select_atom_weak(vec({1, 2}), d, 1.0, SelectMode::Argmax);
  CHECK(indexed(a.atom) == IndexedAtom{1, 1});
  CHECK(a.pairing == 2.0);
  const Selection f = select_atom_weak(vec({1, 2}), d, 0.5, SelectMode::FirstAbove);
  CHECK(indexed(f.atom) == IndexedAtom{0, 1});
  CHECK(f.pairing == 1.0);
  CHECK(f.e_d == 2.0);

  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  const Dictionary g = FiniteDictionary::gaussian(6, 50, 1);
  for (int k = 0; k < 50; ++k) {
    Vector v(6);
    for (int i = 0; i < 6; ++i) v[i] = normal(rng);
    const Selection am = select_atom_weak(v, g, 1.0, SelectMode::Argmax);
    const Selection fa = select_atom_weak(v, g, 1.0, SelectMode::FirstAbove);
    CHECK(indexed(am.atom) == indexed(fa.atom));
    for (double t : {0.1, 0.5, 0.9}) {
      const Selection w = select_atom_weak(v, g, t, SelectMode::FirstAbove);
      CHECK(w.pairing >= t * w.e_d);
      CHECK(resolve(w.atom, g).dot(v) == doctest::Approx(w.pairing).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(select_atom_weak(vec({1, 2}), d, 0.0), ValidationError);
  CHECK_THROWS_AS(select_atom_weak(vec({1, 2}), d, 1.5), ValidationError);
}

TEST_CASE("argmin_atom_by_objective") {
  const auto e = quadratic_objective(vec({1, 2}));
  const Dictionary d = FiniteDictionary::coordinate(2);
  const AtomValue r = argmin_atom_by_objective(*e, Vector::Zero(2), 1.0, d);
  CHECK(r.atom == IndexedAtom{1, 1});
  CHECK(r.value == 1.0);
  const AtomValue z = argmin_atom_by_objective(*e, Vector::Zero(2), 0.0, d);
  CHECK(z.atom == IndexedAtom{0, 1});
  CHECK(z.value == 2.5);
  CHECK_THROWS_AS(
      argmin_atom_by_objective(*e, Vector::Zero(2), 1.0, SphereDictionary()),
      UnsupportedOperation);

  const Vector a = vec({0.3, -2.0, 1.0});
  const auto lin = linear_objective(a);
  const Dictionary d3 = FiniteDictionary::coordinate(3);
  const AtomValue l = argmin_atom_by_objective(*lin, Vector::Zero(3), 1.0, d3);
  CHECK(l.atom == indexed(e_d(-a, d3).atom));
}

TEST_CASE("dictionary from CSV, header optional") {
  const auto dir = std::filesystem::temp_directory_path() / "greedy_opt_dict_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "d.csv");
    out << "a,b,c\n1,0,3\n0,2,4\n";
  }
  const FiniteDictionary d = FiniteDictionary::from_csv((dir / "d.csv").string());
  CHECK(d.size() == 3);
  CHECK(d.dim() == 2);
  CHECK_FALSE(d.is_coordinate());
  CHECK(d.atoms()(0, 2) == doctest::Approx(0.6));
  {
    std::ofstream out(dir / "bad.csv");
    out << "1,2\n3\n";
  }
  CHECK_THROWS_AS(FiniteDictionary::from_csv((dir / "bad.csv").string()),
                  ValidationError);
  std::filesystem::remove_all(dir);
}
