/**
 * The reduced random walk on a reflection-triangle configuration, its
 * boundary limit point, and the two Monte Carlo experiments built on it
 * (batch sampling of the limit law and the contraction coupling).
 *
 * The walk lives on the group generated by the three wall reflections. From
 * the current element w, one of the letters that lengthens the word (a
 * non-descent: crossing that wall moves the alcove w(A) away from the base
 * alcove) is chosen uniformly and multiplied on the right. Choosing uniformly
 * among non-descents is the same process, run on its own clock, as choosing
 * uniformly among all three letters and standing still on a descent: repeated
 * uniform proposals conditioned on acceptance are uniform over the accepted
 * set. Each accepted letter crosses exactly one new reflection wall, and a
 * reduced word never recrosses a wall, so the alcoves w(A) descend through a
 * nested family of half-planes whose boundary traces pin the limit direction
 * down to a shrinking circular arc.
 *
 * Key design decisions:
 *
 *  - Randomness is a counter-based generator (a splitmix-style finalizer over
 *    key + n * odd constant) rather than a stateful engine. Every walk owns a
 *    stream derived from (seed, stream index), so a batch is reproducible
 *    walk-by-walk no matter how walks are scheduled across threads.
 *
 *  - Convergence is certified, not guessed: the walk tracks the intersection
 *    of the far-side boundary arcs of every crossed wall, as a circular arc
 *    in disk-model angles. The true limit lies in that bracket at every step,
 *    so "bracket width below target" is a rigorous stopping rule (up to
 *    floating-point noise in the arc endpoints).
 *
 *  - Each crossed wall's far arc must meet the current bracket in a single
 *    arc. Tangent wall images can shave off a spurious second component at
 *    roundoff scale, so components no wider than 1e-9 are discarded; a
 *    genuine second component or an empty intersection means the invariants
 *    broke and raises InternalInvariantError rather than returning junk.
 *
 *  - Descent tests compare signed side values with a RELATIVE margin (1e-11
 *    of the evaluation's own scale). The wall images shrink as the walk
 *    converges and absolute thresholds would misread every late step; a side
 *    value inside the margin raises InternalInvariantError instead of
 *    silently guessing a sign.
 *
 *  - A never-recross check fingerprints each crossed wall by its rounded
 *    endpoint angles (1e-9 quantum). The check suspends once the bracket is
 *    within two decades of the quantum (width < 1e-7), where distinct walls
 *    could collide in the rounded key; it is a diagnostic for the regime
 *    where descent arithmetic could actually misfire.
 *
 *  - The coupling experiment runs the backward (fold) chain on the disk
 *    boundary: two independent uniform starting angles are driven by the
 *    same uniformly random one-way folds. One step multiplies the expected
 *    arc distance by at most (C + 2)/3, where C < 1 is the contraction
 *    certificate: at each boundary point every fold has |derivative| <= 1
 *    and the pointwise-best fold has |derivative| <= C, so the experiment is
 *    compared against the exponential envelope 2 ((C + 2)/3)^m.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "triwalk/triangle.hpp"

namespace triwalk {

/// Counter-based pseudo-random stream: draw n is a finalizer hash of
/// key + n * odd constant, with the key derived from (seed, stream).
/// Instances with the same (seed, stream) produce identical sequences.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  /// The next 64-bit draw (advances the counter).
  std::uint64_t next();

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01();

  /// Uniform integer in [0, bound) by rejection (bound >= 1); rejected
  /// draws advance the counter, keeping the stream deterministic.
  std::uint32_t below(std::uint32_t bound);

  /// The splitmix-style avalanche finalizer used throughout.
  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// A circular arc of disk-boundary angles: start at `lo` (in [0, 2pi)) and
/// run counterclockwise for `width` radians (width = 2pi means the whole
/// circle, i.e. no constraint yet).
struct ArcBracket {
  double lo = 0.0;
  double width = 0.0;

  /// Whether the angle (any real number; reduced mod 2pi) lies on the arc,
  /// start inclusive.
  bool contains(double theta) const;

  /// The angle halfway along the arc, reduced to [0, 2pi).
  double midpoint() const;
};

/// Intersection of two arc brackets. The result must be a single arc:
/// spurious extra components no wider than 1e-9 (roundoff from tangent wall
/// images) are dropped, and a genuinely split or empty intersection raises
/// InternalInvariantError.
ArcBracket intersect_arc(const ArcBracket& current, const ArcBracket& incoming);

/// Controls for a single walk.
struct WalkParams {
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::size_t max_steps = 10000;    ///< accepted crossings before giving up
  double target_width = 1e-6;       ///< stop once the bracket is this narrow
  bool check_no_recross = true;     ///< fingerprint diagnostic (see header)
  std::size_t trajectory_stride = 0;  ///< record w(base) every k steps; 0 = off
};

/// One decimated trajectory sample: the walk's interior point after `step`
/// accepted crossings.
struct TrajectoryPoint {
  std::size_t step;
  double x;
  double y;
};

/// Outcome of a single walk.
struct WalkReport {
  bool converged = false;      ///< bracket reached the target width
  std::size_t steps = 0;       ///< accepted crossings performed
  ArcBracket bracket;          ///< final limit bracket, in disk angles
  bool unbounded = false;      ///< bracket contains the angle of infinity
  double zeta = 0.0;           ///< real-line point under the bracket midpoint
  std::vector<TrajectoryPoint> trajectory;
};

/// Run one reduced random walk until the limit bracket is narrower than
/// params.target_width or params.max_steps crossings have been made.
WalkReport run_walk(const TriangleConfig& cfg, const WalkParams& params);

/// Controls for a batch of independent walks.
struct BatchParams {
  std::uint64_t seed = 1;
  std::size_t walks = 1000;
  std::size_t max_steps = 10000;
  double target_width = 1e-6;
  /// Worker threads; 0 means take TRIWALK_THREADS from the environment, or
  /// the hardware concurrency if that is unset. Results are identical for
  /// every thread count (walk j always uses stream j).
  int threads = 0;
};

/// Sorted sample of limit points from independent walks.
struct BatchResult {
  std::vector<double> samples;      ///< limit points, ascending
  std::size_t unbounded_count = 0;  ///< walks whose bracket straddled infinity
  std::size_t max_steps_used = 0;   ///< largest crossing count over the batch
};

/// Run params.walks independent walks (streams 0..walks-1) and collect their
/// limit points. Throws BudgetExceededError if any walk fails to reach the
/// target width within max_steps.
BatchResult batch_sample(const TriangleConfig& cfg, const BatchParams& params);

/// Empirical distribution function of a sorted sample: the fraction of
/// entries <= x.
double ecdf_at(const std::vector<double>& sorted_samples, double x);

/// Controls for the coupling experiment.
struct CouplingParams {
  std::uint64_t seed = 1;
  std::size_t pairs = 1000;   ///< independent coupled pairs
  std::size_t horizon = 40;   ///< folds applied to each pair
};

/// Mean coupled distance against the contraction envelope, per step count.
struct CouplingResult {
  double contraction = 0.0;           ///< certified constant C of the config
  std::vector<double> mean_distance;  ///< index m = 0..horizon
  std::vector<double> std_error;      ///< standard error of each mean
  std::vector<double> bound;          ///< 2 ((C + 2)/3)^m
};

/// Drive pairs of independent uniform boundary angles by shared uniformly
/// random one-way folds in the disk model and record the mean Euclidean
/// distance after each step. mean_distance[0] estimates 4/pi.
CouplingResult coupling_experiment(const TriangleConfig& cfg,
                                   const CouplingParams& params);

}  // namespace triwalk
