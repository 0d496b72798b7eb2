#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "motint/euler.hpp"
#include "motint/matrix.hpp"
#include "motint/semilinear.hpp"

using namespace motint;

namespace {

Constraint con(std::vector<long> coeffs, Rational cnst, Rel rel) {
  Constraint c;
  for (long v : coeffs) c.coeffs.emplace_back(v);
  c.cnst = std::move(cnst);
  c.rel = rel;
  return c;
}

Cell mkcell(std::size_t n, std::vector<Constraint> cons) {
  Cell c;
  c.n = n;
  c.cons = std::move(cons);
  return c;
}

SemilinearSet open_ray() {  // (0, inf)
  return SemilinearSet::from_cell(mkcell(1, {con({1}, Rational(0), Rel::GT)}));
}

SemilinearSet closed_segment(Rational a, Rational b) {
  return SemilinearSet::from_cell(mkcell(1, {con({1}, -a, Rel::GE), con({-1}, b, Rel::GE)}));
}

SemilinearSet open_segment(Rational a, Rational b) {
  return SemilinearSet::from_cell(mkcell(1, {con({1}, -a, Rel::GT), con({-1}, b, Rel::GT)}));
}

}  // namespace

TEST_CASE("one-dimensional invariants") {
  CHECK(chi(SemilinearSet::point({Rational(7, 3)})) == 1);
  CHECK(chi_prime(SemilinearSet::point({Rational(7, 3)})) == 1);

  CHECK(chi(open_ray()) == -1);
  CHECK(chi_prime(open_ray()) == 0);

  SemilinearSet closed_ray = SemilinearSet::from_cell(mkcell(1, {con({1}, Rational(0), Rel::GE)}));
  CHECK(chi(closed_ray) == 0);
  CHECK(chi_prime(closed_ray) == 1);

  SemilinearSet line = SemilinearSet::universe(1);
  CHECK(chi(line) == -1);
  CHECK(chi_prime(line) == 1);

  CHECK(chi(closed_segment(Rational(0), Rational(1))) == 1);
  CHECK(chi_prime(closed_segment(Rational(0), Rational(1))) == 1);
  CHECK(chi(open_segment(Rational(0), Rational(1))) == -1);
  CHECK(chi_prime(open_segment(Rational(0), Rational(1))) == -1);

  SemilinearSet halfopen = SemilinearSet::from_cell(
      mkcell(1, {con({1}, Rational(0), Rel::GT), con({-1}, Rational(1), Rel::GE)}));
  CHECK(chi(halfopen) == 0);
  CHECK(chi_prime(halfopen) == 0);

  CHECK(chi(SemilinearSet::empty(1)) == 0);
  CHECK(chi_prime(SemilinearSet::empty(1)) == 0);
  CHECK(chi(SemilinearSet::universe(0)) == 1);
  CHECK(chi_prime(SemilinearSet::universe(0)) == 1);
}

TEST_CASE("two-dimensional invariants") {
  SemilinearSet tri = SemilinearSet::from_cell(
      mkcell(2, {con({1, 0}, Rational(0), Rel::GE), con({0, 1}, Rational(0), Rel::GE),
                 con({-1, -1}, Rational(1), Rel::GE)}));
  CHECK(chi(tri) == 1);
  CHECK(chi_prime(tri) == 1);

  SemilinearSet open_tri = SemilinearSet::from_cell(
      mkcell(2, {con({1, 0}, Rational(0), Rel::GT), con({0, 1}, Rational(0), Rel::GT),
                 con({-1, -1}, Rational(1), Rel::GT)}));
  CHECK(chi(open_tri) == 1);
  CHECK(chi_prime(open_tri) == 1);

  SemilinearSet halfplane = SemilinearSet::from_cell(mkcell(2, {con({1, 0}, Rational(0), Rel::GE)}));
  CHECK(chi_prime(halfplane) == 1);

  SemilinearSet quadrant = SemilinearSet::from_cell(
      mkcell(2, {con({1, 0}, Rational(0), Rel::GT), con({0, 1}, Rational(0), Rel::GT)}));
  CHECK(chi(quadrant) == 1);
  CHECK(chi_prime(quadrant) == 0);
}

TEST_CASE("additivity over disjoint pieces") {
  SemilinearSet neg = SemilinearSet::from_cell(mkcell(1, {con({-1}, Rational(0), Rel::GT)}));
  SemilinearSet zero = SemilinearSet::point({Rational(0)});
  SemilinearSet pos = open_ray();
  long total_chi = chi(neg) + chi(zero) + chi(pos);
  long total_chi_prime = chi_prime(neg) + chi_prime(zero) + chi_prime(pos);
  CHECK(total_chi == chi(SemilinearSet::universe(1)));
  CHECK(total_chi_prime == chi_prime(SemilinearSet::universe(1)));

  SemilinearSet u = set_union(set_union(neg, zero), pos);
  CHECK(chi(u) == -1);
  CHECK(chi_prime(u) == 1);
}

TEST_CASE("multiplicativity on products") {
  SemilinearSet seg = closed_segment(Rational(0), Rational(1));
  SemilinearSet ray = open_ray();
  CHECK(chi(product(ray, ray)) == chi(ray) * chi(ray));
  CHECK(chi_prime(product(ray, ray)) == chi_prime(ray) * chi_prime(ray));
  CHECK(chi(product(seg, ray)) == chi(seg) * chi(ray));
  CHECK(chi_prime(product(seg, ray)) == chi_prime(seg) * chi_prime(ray));
  CHECK(chi(product(seg, seg)) == 1);
}

TEST_CASE("square-plus-line relation for the open ray class") {
  // With T the class of (0, inf): T*T + T vanishes under both invariants.
  SemilinearSet t = open_ray();
  SemilinearSet t2 = product(t, t);
  CHECK(chi(t2) + chi(t) == 0);
  CHECK(chi_prime(t2) + chi_prime(t) == 0);
}

TEST_CASE("invariance under unimodular affine maps") {
  SemilinearSet tri = SemilinearSet::from_cell(
      mkcell(2, {con({1, 0}, Rational(0), Rel::GT), con({0, 1}, Rational(0), Rel::GE),
                 con({-1, -1}, Rational(1), Rel::GT)}));
  IntMatrix shear(2, 2);
  shear.at(0, 0) = 1;
  shear.at(0, 1) = 2;
  shear.at(1, 0) = 0;
  shear.at(1, 1) = 1;
  std::vector<Rational> shift = {Rational(-3), Rational(1, 2)};
  SemilinearSet img = affine_image(tri, shear, shift);
  CHECK(chi(img) == chi(tri));
  CHECK(chi_prime(img) == chi_prime(tri));

  SemilinearSet quad = SemilinearSet::from_cell(
      mkcell(2, {con({1, 0}, Rational(0), Rel::GT), con({0, 1}, Rational(0), Rel::GT)}));
  SemilinearSet qimg = affine_image(quad, shear, shift);
  CHECK(chi(qimg) == chi(quad));
  CHECK(chi_prime(qimg) == chi_prime(quad));
}

TEST_CASE("graded wrapper carries the ambient dimension") {
  GradedEuler g = euler_graded(open_ray());
  CHECK(g.grade == 1);
  CHECK(g.pair.chi == -1);
  CHECK(g.pair.chi_prime == 0);
}

TEST_CASE("critical radius exceeds every vertex") {
  SemilinearSet seg = closed_segment(Rational(-5), Rational(3));
  Rational r = critical_radius(seg);
  CHECK(r > Rational(5));
  CHECK(critical_radius(SemilinearSet::universe(1)) >= Rational(1));
}
