#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "motint/matrix.hpp"
#include "motint/rational.hpp"

namespace motint {

// Relation of an affine form against zero.
enum class Rel { EQ, GT, GE };

// sum_i coeffs[i] * x_i + cnst  REL  0, with integer variable coefficients
// and a rational constant.
struct Constraint {
  std::vector<Int> coeffs;
  Rational cnst;
  Rel rel = Rel::GE;

  Rational eval(const std::vector<Rational>& x) const;
  bool holds(const std::vector<Rational>& x) const;
};

bool operator==(const Constraint& a, const Constraint& b);
bool constraint_less(const Constraint& a, const Constraint& b);

// Conjunction of constraints in Q^n; convex.
struct Cell {
  std::size_t n = 0;
  std::vector<Constraint> cons;
};

// Finite union of cells in Q^n. Cells may overlap until normalize().
struct SemilinearSet {
  std::size_t n = 0;
  std::vector<Cell> cells;

  static SemilinearSet empty(std::size_t n);
  static SemilinearSet universe(std::size_t n);
  static SemilinearSet point(const std::vector<Rational>& x);
  static SemilinearSet from_cell(Cell c);
};

// --- basic predicates -------------------------------------------------------

// Feasibility over Q (exact Fourier-Motzkin).
bool cell_is_empty(const Cell& c);
bool is_empty(const SemilinearSet& s);
bool contains(const SemilinearSet& s, const std::vector<Rational>& x);

// --- boolean algebra (exact point-set semantics) ----------------------------

SemilinearSet set_union(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet set_intersect(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet set_complement(const SemilinearSet& a);
SemilinearSet set_difference(const SemilinearSet& a, const SemilinearSet& b);
bool set_equal(const SemilinearSet& a, const SemilinearSet& b);

// Pairwise-disjoint cells, empty cells dropped, constraints canonicalized and
// best-effort pruned.
SemilinearSet normalize(const SemilinearSet& s);

// --- geometry ---------------------------------------------------------------

// Existential projection dropping coordinate i (0-based).
SemilinearSet project(const SemilinearSet& s, std::size_t i);

// o-minimal dimension: -1 for the empty set, else max over cells of the
// dimension of the cell's affine hull.
int cell_dimension(const Cell& c);
int dimension(const SemilinearSet& s);

// Recession structure of a single cell.
struct RecessionInfo {
  bool bounded = true;
  // Primitive integer generators: the cone is span(lineality) + cone(rays).
  std::vector<std::vector<Int>> rays;
  std::vector<std::vector<Int>> lineality;
};
RecessionInfo recession(const Cell& c);
bool is_bounded(const SemilinearSet& s);

// Vertices of the topological closure of a cell (may be empty for cones/flats).
std::vector<std::vector<Rational>> cell_vertices(const Cell& c);

// Disjoint cylindrical cells with exact dimensions, covering the set.
// Variables are eliminated from the highest index downward.
struct DecomposedCell {
  Cell cell;
  int dim = 0;
  // Fiber profile of the cylinder: how many coordinate levels contribute a
  // half-infinite open interval (rays) or an unconstrained full line (lines).
  // The remaining dim - rays - lines levels are bounded open intervals.
  int rays = 0;
  int lines = 0;
};
std::vector<DecomposedCell> cell_decompose(const SemilinearSet& s);

// A witness point in the cell (interior choices where possible), or nullopt
// when the cell is empty.
std::optional<std::vector<Rational>> cell_sample(const Cell& c);

// --- transformations --------------------------------------------------------

// Exact image under x |-> M x + c with M invertible rational.
SemilinearSet affine_image(const SemilinearSet& s, const QMatrix& m, const std::vector<Rational>& c);
SemilinearSet affine_image(const SemilinearSet& s, const IntMatrix& m, const std::vector<Rational>& c);
SemilinearSet translate(const SemilinearSet& s, const std::vector<Rational>& c);
// x |-> k x for positive rational k.
SemilinearSet dilate(const SemilinearSet& s, const Rational& k);
// Coordinate concatenation (cartesian product).
SemilinearSet product(const SemilinearSet& a, const SemilinearSet& b);
// Intersection with the closed cube [-r, r]^n.
SemilinearSet intersect_cube(const SemilinearSet& s, const Rational& r);

// Number of points of S at the lattice (1/r Z)^n; requires S bounded.
Int lattice_count(const SemilinearSet& s, long r);

QMatrix q_inverse(const QMatrix& m);  // exact inverse, DomainError if singular

}  // namespace motint
