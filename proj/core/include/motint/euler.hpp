#pragma once

#include <cstdint>

#include "motint/rational.hpp"
#include "motint/semilinear.hpp"

namespace motint {

// The two additive/multiplicative invariants of semilinear sets.
struct EulerPair {
  long chi = 0;
  long chi_prime = 0;

  friend bool operator==(const EulerPair& a, const EulerPair& b) {
    return a.chi == b.chi && a.chi_prime == b.chi_prime;
  }
};

// Combinatorial invariant: sum of (-1)^dim over a disjoint cylindrical
// decomposition. Open bounded or semi-infinite intervals count -1, points +1.
long chi(const SemilinearSet& s);

// Stabilized truncated invariant: chi(S ∩ [-r,r]^n) for any r beyond the
// critical radius of S. Gives semi-infinite open intervals 0; agrees with chi
// on bounded sets.
long chi_prime(const SemilinearSet& s);

// Radius beyond which the cube truncation of S stops changing chi:
// 1 + the largest coordinate magnitude seen among the decomposed cells'
// anchor points (vertices of the closure, or a witness point when there are
// none) and the breakpoints reached from those anchors along recession
// directions.
Rational critical_radius(const SemilinearSet& s);

// Both invariants together with the ambient dimension (the grade at which
// the class lives).
struct GradedEuler {
  EulerPair pair;
  std::size_t grade = 0;
};
GradedEuler euler_graded(const SemilinearSet& s);

}  // namespace motint
