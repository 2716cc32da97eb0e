#pragma once

// Closed-form NDT bounds as functions of the computation load: the novel
// alignment upper bound, the converse lower bound, and the two earlier upper
// bounds (one-shot beamforming, grouped alignment). All values are exact.

#include <string>
#include <vector>

#include "wmr/rational.hpp"

namespace wmr {

struct Point {
  Rational x;
  Rational y;
};

/// Convex piecewise-linear function given by its breakpoints (strictly
/// increasing x). Evaluation outside [min_x, max_x] is a ParameterError.
class PiecewiseLinearEnvelope {
 public:
  explicit PiecewiseLinearEnvelope(std::vector<Point> breakpoints);

  const std::vector<Point>& breakpoints() const { return breakpoints_; }
  const Rational& min_x() const { return breakpoints_.front().x; }
  const Rational& max_x() const { return breakpoints_.back().x; }

  Rational operator()(const Rational& x) const;

 private:
  std::vector<Point> breakpoints_;
};

/// Lower convex envelope of a finite point set with distinct x values.
PiecewiseLinearEnvelope lower_convex_envelope(std::vector<Point> points);

/// Novel-scheme NDT at an integer load r in [1, K].
Rational delta_ub(int K, int r);

/// lowc over {(r, delta_ub(K, r)) : r in [K]}, evaluated at r.
Rational delta_ub_envelope(int K, const Rational& r);

/// C_t(i) for t in [floor(K/2)], i in [K].
Rational coefficient_c(int K, int t, int i);

/// Converse lower bound at a rational load r in [1, K].
Rational delta_lb(int K, const Rational& r);

/// One-shot beamforming / zero-forcing upper bound.
Rational delta_ub_oneshot(int K, const Rational& r);

/// Sum-DoF lower bound of the grouped alignment scheme; r must divide K and
/// satisfy 1 <= r < K.
Rational sum_dof_groups_lb(int K, int r);

/// Grouped-alignment upper bound.
Rational delta_ub_groups(int K, const Rational& r);

/// (1 - r/K) / sumdof.
Rational ndt_from_sumdof(int K, const Rational& r, const Rational& sumdof);

enum class CurveLabel { ub_novel, ub_oneshot, ub_groups, lb };

std::string to_string(CurveLabel label);

struct BoundCurve {
  CurveLabel label;
  std::vector<Point> samples;  // (r, value)
};

/// Sorted grid over [1, K]: multiples of `step` plus every integer.
std::vector<Rational> load_grid(int K, const Rational& step);

/// The four series of the tradeoff figures on load_grid(K, step), in the
/// order ub_novel, ub_oneshot, ub_groups, lb.
std::vector<BoundCurve> bound_curves(int K, const Rational& step);

struct BoundCheck {
  std::string name;
  Rational r;
  Rational lhs;
  Rational rhs;
  std::string relation;  // "==" or "<"
  bool pass = false;
};

struct CorollaryReport {
  int K = 0;
  std::vector<BoundCheck> checks;

  bool all_pass() const;
};

/// Exact checks of the optimality region (integer r >= ceil(K/2)), strict
/// improvement over both prior bounds, and agreement of the novel bound with
/// (1 - r/K) / Sum-DoF of the constructed scheme for integer r < K/2.
CorollaryReport corollary_checks(int K);

/// Whether delta_lb is constant on [i, i+1], sampled at the endpoints and the
/// midpoint. Diagnostic only.
struct PlateauDiagnostic {
  int i = 0;
  Rational left;
  Rational mid;
  Rational right;
  bool constant = false;
};

std::vector<PlateauDiagnostic> lb_plateau_diagnostics(int K);

}  // namespace wmr
