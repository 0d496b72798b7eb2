// Microbenchmarks for the hot paths: boolean algebra and decomposition of
// piecewise-linear sets, exact volume and lattice counting, Smith normal
// form, summation of exponential sums, and torsion-point classification.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "motint/denef.hpp"
#include "motint/euler.hpp"
#include "motint/gamma.hpp"
#include "motint/igusa.hpp"
#include "motint/matrix.hpp"
#include "motint/semilinear.hpp"

namespace {

using namespace motint;

Constraint con(std::vector<long> coeffs, Rational cnst, Rel rel) {
  Constraint c;
  c.coeffs.reserve(coeffs.size());
  for (long x : coeffs) c.coeffs.emplace_back(x);
  c.cnst = std::move(cnst);
  c.rel = rel;
  return c;
}

// Axis-aligned box prod [lo_i, hi_i] in 3 variables.
Cell box3(long x0, long x1, long y0, long y1, long z0, long z1) {
  Cell c{3, {}};
  c.cons.push_back(con({1, 0, 0}, Rational(-x0), Rel::GE));
  c.cons.push_back(con({-1, 0, 0}, Rational(x1), Rel::GE));
  c.cons.push_back(con({0, 1, 0}, Rational(-y0), Rel::GE));
  c.cons.push_back(con({0, -1, 0}, Rational(y1), Rel::GE));
  c.cons.push_back(con({0, 0, 1}, Rational(-z0), Rel::GE));
  c.cons.push_back(con({0, 0, -1}, Rational(z1), Rel::GE));
  return c;
}

SemilinearSet staircase() {
  SemilinearSet s = SemilinearSet::empty(3);
  for (long k = 0; k < 4; ++k) s.cells.push_back(box3(k, k + 2, k, k + 3, -k, k + 1));
  return s;
}

SemilinearSet clipped_simplex() {
  Cell c{3, {}};
  c.cons.push_back(con({1, 0, 0}, Rational(0), Rel::GE));
  c.cons.push_back(con({0, 1, 0}, Rational(0), Rel::GE));
  c.cons.push_back(con({0, 0, 1}, Rational(0), Rel::GE));
  c.cons.push_back(con({-2, -3, -1}, Rational(6), Rel::GE));
  c.cons.push_back(con({-1, 1, 0}, Rational(1), Rel::GT));
  return SemilinearSet::from_cell(c);
}

void bm_set_difference(benchmark::State& state) {
  SemilinearSet a = staircase();
  SemilinearSet b = translate(a, {Rational(1), Rational(1, 2), Rational(0)});
  for (auto _ : state) benchmark::DoNotOptimize(set_difference(a, b));
}
BENCHMARK(bm_set_difference)->Unit(benchmark::kMillisecond);

void bm_cell_decompose(benchmark::State& state) {
  SemilinearSet s = staircase();
  for (auto _ : state) benchmark::DoNotOptimize(cell_decompose(s));
}
BENCHMARK(bm_cell_decompose)->Unit(benchmark::kMillisecond);

void bm_euler_pair(benchmark::State& state) {
  SemilinearSet a = staircase();
  SemilinearSet b = translate(a, {Rational(1), Rational(1, 2), Rational(0)});
  SemilinearSet d = set_difference(a, b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi(d));
    benchmark::DoNotOptimize(chi_prime(d));
  }
}
BENCHMARK(bm_euler_pair)->Unit(benchmark::kMillisecond);

void bm_volume(benchmark::State& state) {
  SemilinearSet s = clipped_simplex();
  for (auto _ : state) benchmark::DoNotOptimize(volume(s));
}
BENCHMARK(bm_volume)->Unit(benchmark::kMillisecond);

void bm_lattice_count(benchmark::State& state) {
  SemilinearSet s = clipped_simplex();
  long r = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(lattice_count(s, r));
}
BENCHMARK(bm_lattice_count)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void bm_smith_normal_form(benchmark::State& state) {
  std::size_t k = static_cast<std::size_t>(state.range(0));
  IntMatrix m(k, k);
  // Deterministic, well-mixed entries with nontrivial elementary divisors.
  long v = 7;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      v = (v * 31 + 17) % 101;
      m.at(i, j) = Int(v - 50);
    }
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(bm_smith_normal_form)->Arg(3)->Arg(5)->Arg(8);

void bm_ev_wedge(benchmark::State& state) {
  // Wedge whose elimination forces congruence splitting.
  Cell c{2, {}};
  c.cons.push_back(con({0, 1}, Rational(0), Rel::GE));
  c.cons.push_back(con({1, -3}, Rational(0), Rel::GE));
  SemilinearSet delta = SemilinearSet::from_cell(c);
  LinearFunctional h0{{Rational(-1), Rational(-1)}, Rational(0)};
  for (auto _ : state) benchmark::DoNotOptimize(ev(delta, h0, {}, 1));
}
BENCHMARK(bm_ev_wedge)->Unit(benchmark::kMillisecond);

void bm_series_expand(benchmark::State& state) {
  Cell c{2, {}};
  c.cons.push_back(con({0, 1}, Rational(0), Rel::GE));
  c.cons.push_back(con({1, -3}, Rational(0), Rel::GE));
  SemilinearSet delta = SemilinearSet::from_cell(c);
  LinearFunctional h0{{Rational(-1), Rational(-1)}, Rational(0)};
  RationalFunctionQT f = ev(delta, h0, {}, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(series_expand(f, 40, SeriesDirection::DESCENDING));
}
BENCHMARK(bm_series_expand)->Unit(benchmark::kMillisecond);

void bm_eval_igusa(benchmark::State& state) {
  IgusaData d = monomial_data({2, 1});
  long r = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(eval_igusa(d, r));
}
BENCHMARK(bm_eval_igusa)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void bm_singleton_equal(benchmark::State& state) {
  SingletonClass a{{Rational(1, 6), Rational(5, 6), Rational(1, 2)}};
  SingletonClass b{{Rational(5, 6), Rational(1, 6), Rational(1, 2)}};
  for (auto _ : state) benchmark::DoNotOptimize(singleton_equal(a, b));
}
BENCHMARK(bm_singleton_equal)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
