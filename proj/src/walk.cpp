#include "triwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <thread>
#include <utility>

#include "triwalk/errors.hpp"
#include "triwalk/geometry.hpp"

namespace triwalk {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
/// Arc components thinner than this are treated as roundoff debris.
constexpr double kArcNoise = 1e-9;
/// A wall image whose endpoint angles are this close has genuinely collapsed
/// in double precision. Deliberately far below kArcNoise: crossing into a
/// cusp funnel legitimately shrinks the bracket quadratically, so a wall can
/// subtend an arc of order (previous bracket width)^2.
constexpr double kWallCollapseTol = 1e-14;
/// Relative margin demanded of every signed side value used for a decision.
constexpr double kSideMargin = 1e-11;
/// Fingerprint quantum for the never-recross diagnostic.
constexpr double kFingerprintQuantum = 1e-9;
/// The diagnostic suspends once the bracket is this narrow: two decades of
/// headroom over the quantum, below which distinct walls could collide in
/// the rounded key.
constexpr double kFingerprintFloor = 1e-7;

double norm_angle(double theta) {
  theta = std::fmod(theta, kTau);
  if (theta < 0.0) theta += kTau;
  return theta;
}

/// Sign of side_value(wall, z) with a relative margin: the value must clear
/// kSideMargin times its own evaluation scale, otherwise the sign is not
/// trustworthy and the caller's invariants have broken.
int margined_side(const HLine& wall, const Complex& z) {
  const double v = wall.side_value(z);
  double scale = 1.0;
  if (wall.kind == HLine::Kind::Vertical) {
    scale = std::max({1.0, std::abs(z.real()), std::abs(wall.x0)});
  } else {
    const double d2 = std::norm(z - Complex(wall.x0, 0.0));
    scale = d2 + wall.radius * wall.radius;
  }
  if (!(std::abs(v) > kSideMargin * scale)) {
    throw InternalInvariantError(
        "walk: side value inside the relative margin; descent sign would be "
        "a guess (wall " +
        wall.to_string() + ")");
  }
  return v > 0.0 ? 1 : -1;
}

/// A crossed wall's boundary data: its far-side arc and the raw endpoint
/// angles (for fingerprinting).
struct WallArcs {
  ArcBracket far;
  double theta1;
  double theta2;
};

/// Far-side boundary arc of a wall: the side not containing the base point.
WallArcs far_arc_of(const HLine& wall, const HPoint& base) {
  const auto ends = wall.endpoints();
  const double t1 = cayley_boundary_angle(ends[0]);
  const double t2 = cayley_boundary_angle(ends[1]);
  double w = norm_angle(t2 - t1);
  if (w <= kWallCollapseTol || kTau - w <= kWallCollapseTol) {
    throw InternalInvariantError(
        "walk: wall image collapsed on the boundary circle: " +
        wall.to_string());
  }
  const int base_sign = margined_side(wall, base);
  // Probe the arc (t1, t1 + w): its midpoint is strictly between the wall's
  // endpoints, so it sits strictly on one side.
  const Boundary probe = cayley_boundary_inverse(norm_angle(t1 + 0.5 * w));
  const int probe_sign = boundary_side(wall, probe);
  if (probe_sign == 0) {
    throw InternalInvariantError(
        "walk: arc midpoint landed on a wall endpoint: " + wall.to_string());
  }
  ArcBracket far;
  if (probe_sign != base_sign) {
    far = {norm_angle(t1), w};
  } else {
    far = {norm_angle(t2), kTau - w};
  }
  return {far, t1, t2};
}

/// Whether crossing wall i from the alcove of g is a descent (moves back
/// toward the base alcove), with margined signs. The wall image is passed in
/// because the caller needs it afterwards anyway.
bool is_descent_margined(const HLine& wall_image, const HPoint& base,
                         const Complex& g_base) {
  return margined_side(wall_image, base) != margined_side(wall_image, g_base);
}

std::pair<std::int64_t, std::int64_t> fingerprint(double t1, double t2) {
  auto a = static_cast<std::int64_t>(std::llround(t1 / kFingerprintQuantum));
  auto b = static_cast<std::int64_t>(std::llround(t2 / kFingerprintQuantum));
  if (a > b) std::swap(a, b);
  return {a, b};
}

int resolve_threads(int requested) {
  if (requested > 0) return std::min(requested, 64);
  if (const char* env = std::getenv("TRIWALK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<int>(std::min<long>(v, 64));
    }
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hc, 1u, 64u));
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + 0x9E3779B97F4A7C15ULL))) {}

std::uint64_t CounterRng::mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t CounterRng::next() {
  ++counter_;
  return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint32_t CounterRng::below(std::uint32_t bound) {
  if (bound == 0) throw std::domain_error("CounterRng::below: bound = 0");
  if (bound == 1) return 0;
  // Rejection over the largest multiple of bound that fits in 64 bits.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t v = next();
    if (v < limit) return static_cast<std::uint32_t>(v % bound);
  }
}

bool ArcBracket::contains(double theta) const {
  if (width >= kTau) return true;
  const double d = norm_angle(theta - lo);
  return d < width;
}

double ArcBracket::midpoint() const { return norm_angle(lo + 0.5 * width); }

ArcBracket intersect_arc(const ArcBracket& current,
                         const ArcBracket& incoming) {
  if (current.width >= kTau - 1e-15) {
    return {norm_angle(incoming.lo), std::min(incoming.width, kTau)};
  }
  if (incoming.width >= kTau - 1e-15) return current;

  struct Component {
    double offset;  // from current.lo, counterclockwise
    double width;
  };
  Component comps[2];
  int n = 0;
  const double d = norm_angle(incoming.lo - current.lo);
  if (d < current.width) {
    const double w = std::min(d + incoming.width, current.width) - d;
    if (w > 0.0) comps[n++] = {d, w};
  }
  // The incoming arc may wrap past the current arc's start.
  const double over = d + incoming.width - kTau;
  if (over > 0.0) {
    const double w = std::min(over, current.width);
    if (w > 0.0) comps[n++] = {0.0, w};
  }
  if (n == 2) {
    // Keep the dominant component if the other is roundoff debris.
    if (comps[0].width < comps[1].width) std::swap(comps[0], comps[1]);
    if (comps[1].width <= kArcNoise) {
      n = 1;
    } else {
      throw InternalInvariantError(
          "walk: bracket intersection split into two arcs of widths " +
          std::to_string(comps[0].width) + " and " +
          std::to_string(comps[1].width));
    }
  }
  if (n == 0) {
    throw InternalInvariantError("walk: bracket intersection is empty");
  }
  return {norm_angle(current.lo + comps[0].offset), comps[0].width};
}

WalkReport run_walk(const TriangleConfig& cfg, const WalkParams& params) {
  CounterRng rng(params.seed, params.stream);
  const std::array<Isometry, 3> mirrors = {
      Isometry::reflection(cfg.line(1)), Isometry::reflection(cfg.line(2)),
      Isometry::reflection(cfg.line(3))};

  Isometry w;
  WalkReport report;
  report.bracket = {0.0, kTau};
  std::set<std::pair<std::int64_t, std::int64_t>> crossed;

  while (report.steps < params.max_steps) {
    if (report.bracket.width <= params.target_width) {
      report.converged = true;
      break;
    }
    const Complex g_base = w.apply(cfg.base);

    // Wall images and non-descents of the current element.
    std::array<HLine, 3> walls = {w.apply(cfg.line(1)), w.apply(cfg.line(2)),
                                  w.apply(cfg.line(3))};
    int candidates[3];
    int n_candidates = 0;
    for (int i = 0; i < 3; ++i) {
      if (!is_descent_margined(walls[static_cast<std::size_t>(i)], cfg.base,
                               g_base)) {
        candidates[n_candidates++] = i;
      }
    }
    if (n_candidates == 0) {
      throw InternalInvariantError(
          "walk: every letter is a descent; no element of an infinite "
          "reflection group has that");
    }

    const int j =
        candidates[rng.below(static_cast<std::uint32_t>(n_candidates))];
    const HLine& wall = walls[static_cast<std::size_t>(j)];
    const WallArcs arcs = far_arc_of(wall, cfg.base);

    if (params.check_no_recross &&
        report.bracket.width >= kFingerprintFloor) {
      if (!crossed.insert(fingerprint(arcs.theta1, arcs.theta2)).second) {
        throw InternalInvariantError(
            "walk: crossed wall fingerprint seen twice: " + wall.to_string());
      }
    }

    report.bracket = intersect_arc(report.bracket, arcs.far);
    w = w.compose(mirrors[static_cast<std::size_t>(j)]);
    ++report.steps;

    if (params.trajectory_stride != 0 &&
        report.steps % params.trajectory_stride == 0) {
      const Complex p = w.apply(cfg.base);
      report.trajectory.push_back({report.steps, p.real(), p.imag()});
    }
  }
  if (!report.converged && report.bracket.width <= params.target_width) {
    report.converged = true;  // budget and target met on the same step
  }

  report.unbounded = report.bracket.contains(0.0);
  const Boundary mid = cayley_boundary_inverse(report.bracket.midpoint());
  report.zeta =
      mid.is_infinite ? std::numeric_limits<double>::infinity() : mid.x;
  return report;
}

BatchResult batch_sample(const TriangleConfig& cfg, const BatchParams& params) {
  const std::size_t n = params.walks;
  std::vector<double> samples(n);
  std::vector<unsigned char> unbounded(n, 0);
  std::vector<std::size_t> steps(n, 0);

  const int threads =
      std::max(1, std::min<int>(resolve_threads(params.threads),
                                n == 0 ? 1 : static_cast<int>(std::min<std::size_t>(n, 64))));

  // First failure by walk index, so the reported error does not depend on
  // thread scheduling.
  std::vector<std::size_t> fail_index(static_cast<std::size_t>(threads), n);
  std::vector<std::exception_ptr> fail(static_cast<std::size_t>(threads));

  auto work = [&](int t) {
    const std::size_t lo = n * static_cast<std::size_t>(t) /
                           static_cast<std::size_t>(threads);
    const std::size_t hi = n * (static_cast<std::size_t>(t) + 1) /
                           static_cast<std::size_t>(threads);
    for (std::size_t j = lo; j < hi; ++j) {
      try {
        WalkParams wp;
        wp.seed = params.seed;
        wp.stream = j;
        wp.max_steps = params.max_steps;
        wp.target_width = params.target_width;
        const WalkReport r = run_walk(cfg, wp);
        if (!r.converged) {
          throw BudgetExceededError(
              "batch_sample: walk " + std::to_string(j) + " still at width " +
              std::to_string(r.bracket.width) + " after " +
              std::to_string(r.steps) + " crossings");
        }
        samples[j] = r.zeta;
        unbounded[j] = r.unbounded ? 1 : 0;
        steps[j] = r.steps;
      } catch (...) {
        fail_index[static_cast<std::size_t>(t)] = j;
        fail[static_cast<std::size_t>(t)] = std::current_exception();
        return;
      }
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  std::size_t first_fail = n;
  std::exception_ptr first;
  for (std::size_t t = 0; t < fail.size(); ++t) {
    if (fail[t] && fail_index[t] < first_fail) {
      first_fail = fail_index[t];
      first = fail[t];
    }
  }
  if (first) std::rethrow_exception(first);

  BatchResult result;
  result.samples = std::move(samples);
  std::sort(result.samples.begin(), result.samples.end());
  for (std::size_t j = 0; j < n; ++j) {
    result.unbounded_count += unbounded[j];
    result.max_steps_used = std::max(result.max_steps_used, steps[j]);
  }
  return result;
}

double ecdf_at(const std::vector<double>& sorted_samples, double x) {
  if (sorted_samples.empty()) {
    throw std::domain_error("ecdf_at: empty sample");
  }
  const auto it =
      std::upper_bound(sorted_samples.begin(), sorted_samples.end(), x);
  return static_cast<double>(it - sorted_samples.begin()) /
         static_cast<double>(sorted_samples.size());
}

CouplingResult coupling_experiment(const TriangleConfig& cfg,
                                   const CouplingParams& params) {
  if (params.pairs < 2) {
    throw std::domain_error("coupling_experiment: need at least 2 pairs");
  }
  const DiskConfig disk = disk_normalize(cfg);

  CouplingResult result;
  result.contraction = contraction_constant(disk);
  const std::size_t rows = params.horizon + 1;
  std::vector<double> sum(rows, 0.0);
  std::vector<double> sumsq(rows, 0.0);

  for (std::size_t p = 0; p < params.pairs; ++p) {
    CounterRng rng(params.seed, p);
    double a = kTau * rng.uniform01();
    double b = kTau * rng.uniform01();
    for (std::size_t m = 0; m < rows; ++m) {
      if (m > 0) {
        const DiskCircle& wall = disk.walls[rng.below(3)];
        a = disk_fold(wall, a);
        b = disk_fold(wall, b);
      }
      const double dist = 2.0 * std::abs(std::sin(0.5 * (a - b)));
      sum[m] += dist;
      sumsq[m] += dist * dist;
    }
  }

  const double n = static_cast<double>(params.pairs);
  const double factor = (result.contraction + 2.0) / 3.0;
  result.mean_distance.resize(rows);
  result.std_error.resize(rows);
  result.bound.resize(rows);
  for (std::size_t m = 0; m < rows; ++m) {
    const double mean = sum[m] / n;
    const double var =
        std::max(0.0, (sumsq[m] - n * mean * mean) / (n - 1.0));
    result.mean_distance[m] = mean;
    result.std_error[m] = std::sqrt(var / n);
    result.bound[m] = 2.0 * std::pow(factor, static_cast<double>(m));
  }
  return result;
}

}  // namespace triwalk
