#pragma once

#include <string>
#include <utility>
#include <vector>

#include "motint/matrix.hpp"
#include "motint/qpoly.hpp"
#include "motint/rational.hpp"
#include "motint/semilinear.hpp"

namespace motint {

// Formal integer combination of semilinear sets, all in the same ambient
// dimension (the grade).
struct GammaClass {
  std::size_t n = 0;
  std::vector<std::pair<Int, SemilinearSet>> terms;

  static GammaClass zero(std::size_t n) { return GammaClass{n, {}}; }
  static GammaClass of_set(const SemilinearSet& s, const Int& coeff = Int(1));
};

GammaClass gamma_add(const GammaClass& a, const GammaClass& b);
GammaClass gamma_scale(const Int& k, const GammaClass& a);
// Product class: pairwise cartesian products, grades add.
GammaClass gamma_mul(const GammaClass& a, const GammaClass& b);

// Additive extensions of the invariants to formal combinations.
Int apply_chi(const GammaClass& c);
Int apply_chi_prime(const GammaClass& c);
Rational apply_volume(const GammaClass& c);          // every summand bounded
Int apply_lattice_count(const GammaClass& c, long r);  // every summand bounded

// --- singleton classes -------------------------------------------------------

// The class of a one-point subset of Γ^n up to unimodular maps and integer
// translations.
struct SingletonClass {
  std::vector<Rational> point;
};

// Exact orbit equality: exists M ∈ GL_n(Z), c ∈ Z^n with M·a + c = b.
bool singleton_equal(const SingletonClass& a, const SingletonClass& b);

// The subgroup (1/m)Z of Q, m >= 1.
struct SubgroupSpec {
  long m = 1;
};

// Indicator-product invariant of a degree-normalized singleton monomial
// [(a_1..a_n)]·e0^k: 1 iff every coordinate lies in (1/m)Z.
int h_t(const SingletonClass& c, SubgroupSpec t);
int h_t(const std::vector<Rational>& coords, long m);

// --- piecewise affine morphisms ----------------------------------------------

struct MapPiece {
  Cell domain;
  IntMatrix matrix;
  std::vector<Rational> shift;
};

struct PiecewiseAffineMap {
  std::size_t n = 0;
  std::vector<MapPiece> pieces;
};

enum class MorphismMode { PLAIN, SUM_PRESERVING };

struct MorphismReport {
  bool ok = false;
  std::string reason;  // empty on success; first failure otherwise
};

// Checks that the pieces' domains partition X, every matrix is unimodular
// with integer shift, the images are pairwise disjoint and cover Y exactly,
// and (in SUM_PRESERVING mode) the coordinate-sum functional is preserved.
MorphismReport verify_morphism(const PiecewiseAffineMap& f, const SemilinearSet& x,
                               const SemilinearSet& y, MorphismMode mode);

// --- volume -------------------------------------------------------------------

// Exact top-dimensional Lebesgue volume of a bounded set at its grade;
// lower-dimensional cells contribute zero.
Rational volume(const SemilinearSet& s);

// One chamber of a parametric volume: for parameter values in `cell` (a
// one-variable condition) the fiber volume equals `poly` evaluated there.
struct VolumeChamber {
  Cell cell;    // 1-variable condition on the parameter
  QPoly poly;   // 1-variable polynomial
};

// The set lives in variables (x_1..x_n, u) with u the LAST coordinate; the
// result gives the exact volume of the x-fiber as a piecewise polynomial
// in u. Chambers with identically zero volume are omitted.
std::vector<VolumeChamber> volume_param(const SemilinearSet& family);

}  // namespace motint
