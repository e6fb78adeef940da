// Reduced random walk: the counter-based RNG, circular arc bracket algebra,
// single-walk convergence and determinism, batch sampling across thread
// counts, and the boundary coupling experiment against its contraction
// envelope.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "triwalk/errors.hpp"
#include "triwalk/geometry.hpp"
#include "triwalk/triangle.hpp"
#include "triwalk/walk.hpp"

using namespace triwalk;
using doctest::Approx;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTau = 2.0 * kPi;

// Loose Monte Carlo band: fraction estimates over n draws stay within five
// standard deviations of p, and p(1-p) <= 1/4.
double mc_band(std::size_t n) { return 5.0 * 0.5 / std::sqrt(double(n)); }
}  // namespace

TEST_CASE("counter rng is deterministic per (seed, stream)") {
  CounterRng a(42, 7);
  CounterRng b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  CounterRng c(42, 8);
  CounterRng d(43, 7);
  int differ_c = 0;
  int differ_d = 0;
  CounterRng a2(42, 7);
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t v = a2.next();
    if (c.next() != v) ++differ_c;
    if (d.next() != v) ++differ_d;
  }
  CHECK(differ_c > 60);  // streams decorrelate immediately
  CHECK(differ_d > 60);
}

TEST_CASE("counter rng uniform01 and below look uniform") {
  CounterRng rng(2024, 0);
  const int n = 20000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == Approx(0.5).epsilon(0.02));

  int counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) counts[rng.below(3)] += 1;
  for (int k = 0; k < 3; ++k) {
    // 5 sigma around n/3 with sigma = sqrt(n p (1-p)) ~ 67.
    CHECK(std::abs(counts[k] - n / 3.0) < 5.0 * std::sqrt(n * (1.0 / 3) * (2.0 / 3)));
  }
  for (int i = 0; i < 100; ++i) CHECK(rng.below(1) == 0);
}

TEST_CASE("arc bracket membership and midpoint handle wraparound") {
  const ArcBracket plain{1.0, 2.0};
  CHECK(plain.contains(1.0));  // start inclusive
  CHECK(plain.contains(2.5));
  CHECK_FALSE(plain.contains(3.1));
  CHECK_FALSE(plain.contains(0.5));
  CHECK(plain.midpoint() == Approx(2.0));

  const ArcBracket wrap{kTau - 0.5, 1.0};  // straddles angle 0
  CHECK(wrap.contains(0.0));
  CHECK(wrap.contains(kTau - 0.25));
  CHECK(wrap.contains(0.4));
  CHECK_FALSE(wrap.contains(1.0));
  CHECK(wrap.midpoint() == Approx(0.0).scale(1.0));

  const ArcBracket full{0.0, kTau};
  CHECK(full.contains(0.0));
  CHECK(full.contains(4.0));
}

TEST_CASE("arc intersection: containment, overlap, wrap, noise, failures") {
  const ArcBracket full{0.0, kTau};

  // Full circle is the no-constraint element.
  ArcBracket r = intersect_arc(full, {1.0, 0.5});
  CHECK(r.lo == Approx(1.0));
  CHECK(r.width == Approx(0.5));
  r = intersect_arc({1.0, 0.5}, full);
  CHECK(r.lo == Approx(1.0));
  CHECK(r.width == Approx(0.5));

  // Nested.
  r = intersect_arc({0.0, kPi}, {kPi / 4, kPi / 4});
  CHECK(r.lo == Approx(kPi / 4));
  CHECK(r.width == Approx(kPi / 4));

  // Partial overlap on the high side.
  r = intersect_arc({0.0, kPi}, {3 * kPi / 4, kPi});
  CHECK(r.lo == Approx(3 * kPi / 4));
  CHECK(r.width == Approx(kPi / 4));

  // Incoming wraps past 2 pi and lands back inside.
  r = intersect_arc({0.0, kPi}, {7 * kPi / 4, kPi});
  CHECK(r.lo == Approx(0.0).scale(1.0));
  CHECK(r.width == Approx(3 * kPi / 4));

  // Incoming contains the current arc entirely (offset lands "behind" lo).
  r = intersect_arc({1.0, 0.5}, {0.9, 1.0});
  CHECK(r.lo == Approx(1.0));
  CHECK(r.width == Approx(0.5));

  // A tangency-scale second component is dropped as noise.
  r = intersect_arc({0.0, kPi}, {kPi - 1e-12, kPi / 2 + kPi + 2e-12});
  CHECK(r.lo == Approx(0.0).scale(1.0));
  CHECK(r.width == Approx(kPi / 2).epsilon(1e-9));

  // A genuine split is an invariant failure, as is an empty intersection.
  CHECK_THROWS_AS(intersect_arc({0.0, 1.5 * kPi}, {1.25 * kPi, 1.5 * kPi}),
                  InternalInvariantError);
  CHECK_THROWS_AS(intersect_arc({0.0, kPi / 2}, {kPi, kPi / 2}),
                  InternalInvariantError);
}

TEST_CASE("single walk converges, stays converged under reruns") {
  const TriangleConfig cfg = builtin_pgl2();
  WalkParams p;
  p.seed = 42;
  p.stream = 0;
  p.target_width = 1e-6;

  const WalkReport r1 = run_walk(cfg, p);
  CHECK(r1.converged);
  CHECK(r1.steps > 10);
  CHECK(r1.steps < 10000);
  CHECK(r1.bracket.width > 0.0);
  CHECK(r1.bracket.width <= 1e-6);
  CHECK(r1.bracket.lo >= 0.0);
  CHECK(r1.bracket.lo < kTau);
  CHECK(std::isfinite(r1.zeta));

  const WalkReport r2 = run_walk(cfg, p);
  CHECK(r2.zeta == r1.zeta);
  CHECK(r2.steps == r1.steps);
  CHECK(r2.bracket.lo == r1.bracket.lo);
  CHECK(r2.bracket.width == r1.bracket.width);
}

TEST_CASE("first crossing brackets the limit by one wall's far arc") {
  const TriangleConfig cfg = builtin_pgl2();
  // Far arcs of the three walls, in disk angles:
  //   wall 1 (x = -1/2): real points below -1/2, plus the endpoint at
  //     infinity -> arc from angle 0 to the angle of -1/2;
  //   wall 2 (|z| = 1): the real interval (-1, 1) -> angles (pi/2, 3pi/2);
  //   wall 3 (x = 0):  real points above 0 -> angles (pi, 2 pi).
  const double t_half = cayley_boundary_angle(Boundary::at(-0.5));
  struct Arc {
    double lo, width;
  };
  const Arc expect[3] = {{0.0, t_half},
                         {kPi / 2, kPi},
                         {kPi, kPi}};

  for (std::uint64_t stream = 0; stream < 12; ++stream) {
    WalkParams p;
    p.seed = 99;
    p.stream = stream;
    p.max_steps = 1;
    p.target_width = 0.0;
    const WalkReport r = run_walk(cfg, p);
    CHECK(r.steps == 1);
    CHECK_FALSE(r.converged);
    bool matched = false;
    for (const Arc& a : expect) {
      if (std::abs(r.bracket.lo - a.lo) < 1e-12 &&
          std::abs(r.bracket.width - a.width) < 1e-12) {
        matched = true;
      }
    }
    CHECK(matched);
  }
}

TEST_CASE("brackets nest as the target tightens") {
  const TriangleConfig cfg = builtin_pgl2();
  for (std::uint64_t stream = 0; stream < 20; ++stream) {
    WalkParams loose;
    loose.seed = 5;
    loose.stream = stream;
    loose.target_width = 1e-3;
    WalkParams tight = loose;
    tight.target_width = 1e-8;

    const WalkReport rl = run_walk(cfg, loose);
    const WalkReport rt = run_walk(cfg, tight);
    CHECK(rl.converged);
    CHECK(rt.converged);
    CHECK(rt.steps >= rl.steps);
    CHECK(rt.bracket.width <= rl.bracket.width);
    // The tighter bracket lies inside the looser one (same stream, so the
    // tight run extends the loose run's crossing sequence).
    CHECK(rl.bracket.contains(rt.bracket.lo));
    CHECK(rl.bracket.contains(rt.bracket.lo + rt.bracket.width * 0.999));
    // And the limit estimates agree to the loose bracket's resolution.
    CHECK(rl.bracket.contains(rt.bracket.midpoint()));
  }
}

TEST_CASE("walks converge on every builtin configuration") {
  for (const TriangleConfig& cfg :
       {builtin_pgl2(), builtin_right_angle(), builtin_ideal()}) {
    for (std::uint64_t stream = 0; stream < 25; ++stream) {
      WalkParams p;
      p.seed = 1234;
      p.stream = stream;
      p.target_width = 1e-6;
      const WalkReport r = run_walk(cfg, p);
      CHECK(r.converged);
      CHECK(r.bracket.width <= 1e-6);
    }
  }
}

TEST_CASE("tight-target walk keeps its invariants through cusp funnels") {
  // Width 1e-9 exercises the quadratic bracket collapse near cusps and the
  // suspension of the fingerprint diagnostic; any recross or split bracket
  // would throw.
  for (const TriangleConfig& cfg : {builtin_pgl2(), builtin_ideal()}) {
    for (std::uint64_t stream = 0; stream < 10; ++stream) {
      WalkParams p;
      p.seed = 11;
      p.stream = stream;
      p.target_width = 1e-9;
      p.max_steps = 10000;
      const WalkReport r = run_walk(cfg, p);
      CHECK(r.converged);
      CHECK(r.bracket.width <= 1e-9);
    }
  }
}

TEST_CASE("trajectory decimation records every k-th interior point") {
  WalkParams p;
  p.seed = 5;
  p.stream = 2;
  p.trajectory_stride = 10;
  const WalkReport r = run_walk(builtin_pgl2(), p);
  CHECK(r.trajectory.size() == r.steps / 10);
  std::size_t expected = 10;
  for (const TrajectoryPoint& tp : r.trajectory) {
    CHECK(tp.step == expected);
    expected += 10;
    CHECK(tp.y > 0.0);  // interior points stay in the upper half-plane
  }
}

TEST_CASE("budget exhaustion: run_walk reports, batch_sample throws") {
  WalkParams p;
  p.seed = 42;
  p.stream = 0;
  p.max_steps = 3;
  const WalkReport r = run_walk(builtin_pgl2(), p);
  CHECK_FALSE(r.converged);
  CHECK(r.steps == 3);

  BatchParams bp;
  bp.seed = 42;
  bp.walks = 4;
  bp.max_steps = 3;
  CHECK_THROWS_AS(batch_sample(builtin_pgl2(), bp), BudgetExceededError);
}

TEST_CASE("batch sampling is sorted, deterministic, thread-invariant") {
  const TriangleConfig cfg = builtin_pgl2();
  BatchParams bp;
  bp.seed = 7;
  bp.walks = 400;
  bp.threads = 1;
  const BatchResult serial = batch_sample(cfg, bp);
  CHECK(serial.samples.size() == 400);
  CHECK(std::is_sorted(serial.samples.begin(), serial.samples.end()));
  CHECK(serial.max_steps_used > 0);
  CHECK(serial.max_steps_used < 10000);

  bp.threads = 4;
  const BatchResult parallel = batch_sample(cfg, bp);
  REQUIRE(parallel.samples.size() == serial.samples.size());
  for (std::size_t i = 0; i < serial.samples.size(); ++i) {
    CHECK(parallel.samples[i] == serial.samples[i]);
  }
  CHECK(parallel.unbounded_count == serial.unbounded_count);
}

TEST_CASE("batch sample tracks the exact limit law at its known quantiles") {
  // Spot values of the limiting distribution for the arithmetic
  // configuration: F(-1) = 1/4, F(0) = 1/2, F(1) = 7/8, F(2) = 31/32.
  const TriangleConfig cfg = builtin_pgl2();
  BatchParams bp;
  bp.seed = 2025;
  bp.walks = 2000;
  const BatchResult br = batch_sample(cfg, bp);
  const double band = mc_band(bp.walks);  // ~0.056
  CHECK(std::abs(ecdf_at(br.samples, -1.0) - 0.25) < band);
  CHECK(std::abs(ecdf_at(br.samples, 0.0) - 0.50) < band);
  CHECK(std::abs(ecdf_at(br.samples, 1.0) - 0.875) < band);
  CHECK(std::abs(ecdf_at(br.samples, 2.0) - 31.0 / 32.0) < band);
}

TEST_CASE("ecdf_at counts closed-tail fractions") {
  const std::vector<double> s = {1.0, 2.0, 2.0, 5.0};
  CHECK(ecdf_at(s, 0.0) == 0.0);
  CHECK(ecdf_at(s, 1.0) == 0.25);   // <= is inclusive
  CHECK(ecdf_at(s, 1.5) == 0.25);
  CHECK(ecdf_at(s, 2.0) == 0.75);
  CHECK(ecdf_at(s, 5.0) == 1.0);
  CHECK(ecdf_at(s, 9.0) == 1.0);
  CHECK_THROWS_AS(ecdf_at({}, 0.0), std::domain_error);
}

TEST_CASE("coupling experiment hugs its contraction envelope") {
  const TriangleConfig cfg = builtin_pgl2();
  CouplingParams cp;
  cp.seed = 31;
  cp.pairs = 1500;
  cp.horizon = 25;
  const CouplingResult cr = coupling_experiment(cfg, cp);

  CHECK(cr.contraction == Approx(25.0 / 29.0).epsilon(1e-9));
  REQUIRE(cr.mean_distance.size() == 26);
  REQUIRE(cr.std_error.size() == 26);
  REQUIRE(cr.bound.size() == 26);

  // Initial distance between independent uniform boundary points: 4/pi.
  CHECK(cr.mean_distance[0] == Approx(4.0 / kPi).epsilon(0.05));
  CHECK(cr.bound[0] == Approx(2.0));

  for (std::size_t m = 0; m <= 25; ++m) {
    CHECK(cr.mean_distance[m] <= cr.bound[m] + 3.0 * cr.std_error[m]);
    CHECK(cr.std_error[m] >= 0.0);
  }
  // The coupled distance actually decays (compare decade marks).
  CHECK(cr.mean_distance[10] < cr.mean_distance[0]);
  CHECK(cr.mean_distance[20] < cr.mean_distance[10]);

  // Deterministic under reruns.
  const CouplingResult again = coupling_experiment(cfg, cp);
  CHECK(again.mean_distance[25] == cr.mean_distance[25]);

  // The ideal configuration carries its exact certificate through.
  CouplingParams ci;
  ci.pairs = 200;
  ci.horizon = 5;
  const CouplingResult ideal = coupling_experiment(builtin_ideal(), ci);
  CHECK(ideal.contraction == Approx(3.0 / 7.0).epsilon(1e-9));
}
