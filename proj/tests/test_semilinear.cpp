#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "motint/errors.hpp"
#include "motint/semilinear.hpp"

using namespace motint;

namespace {

Constraint con(std::vector<long> coeffs, Rational cnst, Rel rel) {
  Constraint c;
  c.coeffs.reserve(coeffs.size());
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

SemilinearSet interval(Rational lo, bool lo_strict, Rational hi, bool hi_strict) {
  // lo <= x <= hi with chosen strictness
  Cell c = mkcell(1, {con({1}, -lo, lo_strict ? Rel::GT : Rel::GE),
                      con({-1}, hi, hi_strict ? Rel::GT : Rel::GE)});
  return SemilinearSet::from_cell(c);
}

SemilinearSet triangle() {
  // x >= 0, y >= 0, x + y <= 1
  Cell c = mkcell(2, {con({1, 0}, Rational(0), Rel::GE), con({0, 1}, Rational(0), Rel::GE),
                      con({-1, -1}, Rational(1), Rel::GE)});
  return SemilinearSet::from_cell(c);
}

SemilinearSet box2(Rational x0, Rational x1, Rational y0, Rational y1) {
  Cell c = mkcell(2, {con({1, 0}, -x0, Rel::GE), con({-1, 0}, x1, Rel::GE),
                      con({0, 1}, -y0, Rel::GE), con({0, -1}, y1, Rel::GE)});
  return SemilinearSet::from_cell(c);
}

std::vector<Rational> pt2(Rational a, Rational b) { return {std::move(a), std::move(b)}; }

// Exhaustive check of disjointness and coverage for a decomposition.
void check_partition(const SemilinearSet& s) {
  auto parts = cell_decompose(s);
  SemilinearSet acc = SemilinearSet::empty(s.n);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    SemilinearSet pi = SemilinearSet::from_cell(parts[i].cell);
    CHECK(cell_dimension(parts[i].cell) == parts[i].dim);
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      SemilinearSet pj = SemilinearSet::from_cell(parts[j].cell);
      CHECK(is_empty(set_intersect(pi, pj)));
    }
    acc = set_union(acc, pi);
  }
  CHECK(set_equal(acc, s));
}

}  // namespace

TEST_CASE("constraint evaluation") {
  Constraint c = con({2, -3}, Rational(1, 2), Rel::GE);
  CHECK(c.eval(pt2(Rational(1), Rational(1))) == Rational(-1, 2));
  CHECK_FALSE(c.holds(pt2(Rational(1), Rational(1))));
  CHECK(c.holds(pt2(Rational(2), Rational(1))));
  Constraint e = con({1, -1}, Rational(0), Rel::EQ);
  CHECK(e.holds(pt2(Rational(1, 3), Rational(1, 3))));
  CHECK_FALSE(e.holds(pt2(Rational(1), Rational(2))));
}

TEST_CASE("emptiness by exact elimination") {
  CHECK(cell_is_empty(mkcell(1, {con({1}, Rational(-1), Rel::GE), con({-1}, Rational(0), Rel::GE)})));
  CHECK_FALSE(cell_is_empty(mkcell(1, {con({1}, Rational(0), Rel::GE), con({-1}, Rational(0), Rel::GE)})));
  // 0 <= x, x <= 0, but strictly positive: empty
  CHECK(cell_is_empty(mkcell(1, {con({1}, Rational(0), Rel::GT), con({-1}, Rational(0), Rel::GE)})));
  // x = 1/2 and x > 1/3: fine
  CHECK_FALSE(cell_is_empty(mkcell(1, {con({2}, Rational(-1), Rel::EQ), con({3}, Rational(-1), Rel::GT)})));
  // inconsistent equalities
  CHECK(cell_is_empty(mkcell(2, {con({1, 1}, Rational(0), Rel::EQ), con({1, 1}, Rational(-1), Rel::EQ)})));
  // constant constraints
  CHECK(cell_is_empty(mkcell(2, {con({0, 0}, Rational(-1), Rel::GE)})));
  CHECK_FALSE(cell_is_empty(mkcell(0, {})));
  CHECK(is_empty(SemilinearSet::empty(3)));
  CHECK_FALSE(is_empty(SemilinearSet::universe(0)));
}

TEST_CASE("membership") {
  SemilinearSet t = triangle();
  CHECK(contains(t, pt2(Rational(0), Rational(0))));
  CHECK(contains(t, pt2(Rational(1, 2), Rational(1, 2))));
  CHECK_FALSE(contains(t, pt2(Rational(2, 3), Rational(1, 2))));
  SemilinearSet p = SemilinearSet::point({Rational(5, 7)});
  CHECK(contains(p, {Rational(5, 7)}));
  CHECK_FALSE(contains(p, {Rational(5, 8)}));
}

TEST_CASE("boolean algebra on sets") {
  SemilinearSet a = interval(Rational(0), false, Rational(2), false);   // [0,2]
  SemilinearSet b = interval(Rational(1), true, Rational(3), false);    // (1,3]
  SemilinearSet u = set_union(a, b);
  SemilinearSet i = set_intersect(a, b);
  CHECK(set_equal(u, interval(Rational(0), false, Rational(3), false)));
  CHECK(set_equal(i, interval(Rational(1), true, Rational(2), false)));
  // difference: [0,2] \ (1,3] = [0,1]
  CHECK(set_equal(set_difference(a, b), interval(Rational(0), false, Rational(1), false)));
  // De Morgan
  CHECK(set_equal(set_complement(u), set_intersect(set_complement(a), set_complement(b))));
  CHECK(set_equal(set_complement(set_complement(a)), a));
  // complement splits the line into three parts around [0,2]
  SemilinearSet c = set_complement(a);
  CHECK(contains(c, {Rational(-1)}));
  CHECK(contains(c, {Rational(5, 2)}));
  CHECK_FALSE(contains(c, {Rational(1)}));
  CHECK_FALSE(contains(c, {Rational(0)}));
  CHECK(set_equal(set_union(a, c), SemilinearSet::universe(1)));
  CHECK(is_empty(set_intersect(a, c)));
}

TEST_CASE("normalization yields disjoint cells") {
  SemilinearSet a = box2(Rational(0), Rational(2), Rational(0), Rational(2));
  SemilinearSet b = box2(Rational(1), Rational(3), Rational(1), Rational(3));
  SemilinearSet u = set_union(a, b);
  SemilinearSet n = normalize(u);
  CHECK(set_equal(n, u));
  for (std::size_t i = 0; i < n.cells.size(); ++i)
    for (std::size_t j = i + 1; j < n.cells.size(); ++j)
      CHECK(is_empty(set_intersect(SemilinearSet::from_cell(n.cells[i]),
                                   SemilinearSet::from_cell(n.cells[j]))));
}

TEST_CASE("projection") {
  SemilinearSet t = triangle();
  CHECK(set_equal(project(t, 1), interval(Rational(0), false, Rational(1), false)));
  // open diagonal segment projects to an open interval
  Cell diag = mkcell(2, {con({1, -1}, Rational(0), Rel::EQ), con({1, 0}, Rational(0), Rel::GT),
                         con({-1, 0}, Rational(1), Rel::GT)});
  CHECK(set_equal(project(SemilinearSet::from_cell(diag), 0),
                  interval(Rational(0), true, Rational(1), true)));
}

TEST_CASE("dimension") {
  CHECK(dimension(SemilinearSet::point(pt2(Rational(1), Rational(2)))) == 0);
  CHECK(dimension(triangle()) == 2);
  Cell seg = mkcell(2, {con({1, -1}, Rational(0), Rel::EQ), con({1, 0}, Rational(0), Rel::GE),
                        con({-1, 0}, Rational(1), Rel::GE)});
  CHECK(dimension(SemilinearSet::from_cell(seg)) == 1);
  // forced equality from a weak pair
  Cell pinched = mkcell(2, {con({1, -1}, Rational(0), Rel::GE), con({-1, 1}, Rational(0), Rel::GE)});
  CHECK(cell_dimension(pinched) == 1);
  CHECK(dimension(SemilinearSet::empty(2)) == -1);
}

TEST_CASE("recession structure and boundedness") {
  CHECK(is_bounded(triangle()));
  CHECK(is_bounded(SemilinearSet::empty(2)));
  CHECK(is_bounded(SemilinearSet::universe(0)));

  Cell orthant = mkcell(2, {con({1, 0}, Rational(0), Rel::GE), con({0, 1}, Rational(0), Rel::GE)});
  RecessionInfo r = recession(orthant);
  CHECK_FALSE(r.bounded);
  CHECK(r.lineality.empty());
  REQUIRE(r.rays.size() == 2);
  // primitive generators e1 and e2 in some order
  bool has_e1 = false, has_e2 = false;
  for (const auto& ray : r.rays) {
    if (ray[0] == 1 && ray[1] == 0) has_e1 = true;
    if (ray[0] == 0 && ray[1] == 1) has_e2 = true;
  }
  CHECK(has_e1);
  CHECK(has_e2);

  Cell halfplane = mkcell(2, {con({1, 1}, Rational(0), Rel::GE)});
  RecessionInfo h = recession(halfplane);
  CHECK_FALSE(h.bounded);
  REQUIRE(h.lineality.size() == 1);
  CHECK(h.lineality[0][0] == -h.lineality[0][1]);
  REQUIRE(h.rays.size() == 1);
  CHECK(h.rays[0][0] + h.rays[0][1] > 0);

  Cell strip = mkcell(2, {con({0, 1}, Rational(0), Rel::GE), con({0, -1}, Rational(1), Rel::GE)});
  RecessionInfo st = recession(strip);
  CHECK_FALSE(st.bounded);
  REQUIRE(st.lineality.size() == 1);
  CHECK(st.lineality[0][1] == 0);
  CHECK(st.rays.empty());
}

TEST_CASE("vertices of cell closures") {
  Cell t = triangle().cells[0];
  auto vs = cell_vertices(t);
  REQUIRE(vs.size() == 3);
  int seen = 0;
  for (const auto& v : vs) {
    if (v == pt2(Rational(0), Rational(0))) seen |= 1;
    if (v == pt2(Rational(1), Rational(0))) seen |= 2;
    if (v == pt2(Rational(0), Rational(1))) seen |= 4;
  }
  CHECK(seen == 7);
  // open version has the same closure vertices
  Cell open_t = mkcell(2, {con({1, 0}, Rational(0), Rel::GT), con({0, 1}, Rational(0), Rel::GT),
                           con({-1, -1}, Rational(1), Rel::GT)});
  CHECK(cell_vertices(open_t).size() == 3);
}

TEST_CASE("cylindrical decomposition partitions the set") {
  check_partition(triangle());
  check_partition(set_union(box2(Rational(0), Rational(2), Rational(0), Rational(2)),
                            box2(Rational(1), Rational(3), Rational(1), Rational(3))));
  // strict, equality and unbounded pieces
  Cell open_wedge = mkcell(2, {con({1, 0}, Rational(0), Rel::GT), con({1, -1}, Rational(0), Rel::GT)});
  check_partition(SemilinearSet::from_cell(open_wedge));
  Cell diag = mkcell(2, {con({1, -1}, Rational(1, 2), Rel::EQ)});
  check_partition(SemilinearSet::from_cell(diag));
  check_partition(set_complement(triangle()));
  // three dimensions with mixed strictness
  Cell c3 = mkcell(3, {con({1, 0, 0}, Rational(0), Rel::GE), con({0, 1, 0}, Rational(0), Rel::GT),
                       con({0, 0, 1}, Rational(0), Rel::GE),
                       con({-1, -1, -1}, Rational(1), Rel::GT)});
  check_partition(SemilinearSet::from_cell(c3));
}

TEST_CASE("affine transformations") {
  SemilinearSet t = triangle();
  IntMatrix shear(2, 2);
  shear.at(0, 0) = 1;
  shear.at(0, 1) = 0;
  shear.at(1, 0) = 1;
  shear.at(1, 1) = 1;
  std::vector<Rational> zero2 = pt2(Rational(0), Rational(0));
  SemilinearSet img = affine_image(t, shear, zero2);
  // (x, y) in t maps to (x, x + y)
  CHECK(contains(img, pt2(Rational(1, 2), Rational(3, 4))));
  CHECK_FALSE(contains(img, pt2(Rational(1, 2), Rational(1, 4))));
  // composition with the inverse restores the set
  IntMatrix inv = inverse_unimodular(shear);
  CHECK(set_equal(affine_image(img, inv, zero2), t));

  SemilinearSet tr = translate(t, pt2(Rational(5), Rational(-1, 2)));
  CHECK(contains(tr, pt2(Rational(5), Rational(-1, 2))));
  CHECK(set_equal(translate(tr, pt2(Rational(-5), Rational(1, 2))), t));

  SemilinearSet dl = dilate(t, Rational(3, 2));
  CHECK(contains(dl, pt2(Rational(3, 2), Rational(0))));
  CHECK_FALSE(contains(dl, pt2(Rational(3, 2), Rational(1, 2))));
  CHECK(set_equal(dilate(dl, Rational(2, 3)), t));
  CHECK_THROWS_AS(dilate(t, Rational(0)), DomainError);

  SemilinearSet pr = product(interval(Rational(0), false, Rational(1), false),
                             interval(Rational(2), true, Rational(3), false));
  CHECK(pr.n == 2);
  CHECK(contains(pr, pt2(Rational(1, 2), Rational(5, 2))));
  CHECK_FALSE(contains(pr, pt2(Rational(1, 2), Rational(2))));

  SemilinearSet cube = intersect_cube(SemilinearSet::universe(2), Rational(2));
  CHECK(set_equal(cube, box2(Rational(-2), Rational(2), Rational(-2), Rational(2))));
}

TEST_CASE("rational matrix inverse") {
  QMatrix m(2, 2);
  m.at(0, 0) = Rational(1, 2);
  m.at(0, 1) = Rational(1);
  m.at(1, 0) = Rational(0);
  m.at(1, 1) = Rational(2);
  QMatrix mi = q_inverse(m);
  CHECK(mi.at(0, 0) == Rational(2));
  CHECK(mi.at(0, 1) == Rational(-1));
  CHECK(mi.at(1, 0) == Rational(0));
  CHECK(mi.at(1, 1) == Rational(1, 2));
  QMatrix sing(2, 2);
  sing.at(0, 0) = Rational(1);
  sing.at(0, 1) = Rational(2);
  sing.at(1, 0) = Rational(2);
  sing.at(1, 1) = Rational(4);
  CHECK_THROWS_AS(q_inverse(sing), DomainError);
}

TEST_CASE("lattice point counting against direct enumeration") {
  // brute force over a covering grid
  auto brute = [](const SemilinearSet& s, long r, long lo, long hi) {
    Int count(0);
    if (s.n == 1) {
      for (long i = lo * r; i <= hi * r; ++i)
        if (contains(s, {Rational(i, r)})) ++count;
    } else {
      for (long i = lo * r; i <= hi * r; ++i)
        for (long j = lo * r; j <= hi * r; ++j)
          if (contains(s, pt2(Rational(i, r), Rational(j, r)))) ++count;
    }
    return count;
  };

  SemilinearSet t = triangle();
  for (long r : {1L, 2L, 3L}) CHECK(lattice_count(t, r) == brute(t, r, -1, 2));

  SemilinearSet halfopen = interval(Rational(0), true, Rational(2), false);
  for (long r : {1L, 2L, 3L}) CHECK(lattice_count(halfopen, r) == brute(halfopen, r, -1, 3));

  SemilinearSet pt = SemilinearSet::point(pt2(Rational(1, 2), Rational(1, 3)));
  CHECK(lattice_count(pt, 6) == 1);
  CHECK(lattice_count(pt, 2) == 0);
  CHECK(lattice_count(SemilinearSet::empty(2), 1) == 0);

  SemilinearSet seg = SemilinearSet::from_cell(
      mkcell(2, {con({1, -1}, Rational(0), Rel::EQ), con({1, 0}, Rational(0), Rel::GE),
                 con({-1, 0}, Rational(2), Rel::GE)}));
  for (long r : {1L, 2L, 3L}) CHECK(lattice_count(seg, r) == brute(seg, r, -1, 3));

  SemilinearSet uni = set_union(t, translate(t, pt2(Rational(10), Rational(0))));
  CHECK(lattice_count(uni, 1) == 2 * lattice_count(t, 1));

  CHECK_THROWS_AS(lattice_count(SemilinearSet::universe(1), 1), DomainError);
  CHECK_THROWS_AS(lattice_count(t, 0), DomainError);
}
