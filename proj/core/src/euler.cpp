#include "motint/euler.hpp"

#include <algorithm>

namespace motint {

long chi(const SemilinearSet& s) {
  long acc = 0;
  for (const DecomposedCell& dc : cell_decompose(s)) acc += (dc.dim % 2 == 0) ? 1 : -1;
  return acc;
}

long chi_prime(const SemilinearSet& s) {
  // Truncating with a large cube turns each cylinder level into: an unchanged
  // point or bounded-interval fiber, a half-open segment for a half-infinite
  // fiber (contributing -1 + 1 = 0), and a closed segment for a full-line
  // fiber (contributing +1). The per-piece product is therefore 0 whenever a
  // half-infinite fiber occurs and (-1)^(bounded levels) otherwise.
  long acc = 0;
  for (const DecomposedCell& dc : cell_decompose(s)) {
    if (dc.rays > 0) continue;
    acc += ((dc.dim - dc.lines) % 2 == 0) ? 1 : -1;
  }
  return acc;
}

Rational critical_radius(const SemilinearSet& s) {
  Rational best(0);
  auto see = [&best](const Rational& v) { best = std::max(best, v.abs()); };

  for (const DecomposedCell& dc : cell_decompose(s)) {
    // Anchor points: the vertices of the closure, or a witness point when the
    // closure has no vertices (it then contains a line).
    std::vector<std::vector<Rational>> anchors = cell_vertices(dc.cell);
    if (anchors.empty()) {
      if (auto p = cell_sample(dc.cell)) anchors.push_back(std::move(*p));
    }
    for (const auto& a : anchors)
      for (const Rational& coord : a) see(coord);

    // Breakpoints: walking from an anchor along a recession direction, the
    // coordinate of largest magnitude can change only where two coordinates
    // agree up to sign; past the outermost such event the cube-facet pattern
    // of the walk is stable.
    RecessionInfo rec = recession(dc.cell);
    std::vector<std::vector<Int>> gens = rec.rays;
    for (const auto& l : rec.lineality) {
      gens.push_back(l);
      std::vector<Int> neg(l.size());
      for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
      gens.push_back(std::move(neg));
    }
    for (const auto& a : anchors)
      for (const auto& g : gens)
        for (std::size_t i = 0; i < a.size(); ++i)
          for (std::size_t j = i + 1; j < a.size(); ++j)
            for (int sgn : {1, -1}) {
              // a_i + t g_i = sgn (a_j + t g_j), t > 0
              Rational gj = sgn > 0 ? Rational(g[j]) : -Rational(g[j]);
              Rational den = Rational(g[i]) - gj;
              if (den.is_zero()) continue;
              Rational t = ((sgn > 0 ? a[j] : -a[j]) - a[i]) / den;
              if (t.sign() <= 0) continue;
              for (std::size_t k = 0; k < a.size(); ++k)
                see(a[k] + t * Rational(g[k]));
            }
  }
  return best + Rational(1);
}

GradedEuler euler_graded(const SemilinearSet& s) {
  return GradedEuler{EulerPair{chi(s), chi_prime(s)}, s.n};
}

}  // namespace motint
