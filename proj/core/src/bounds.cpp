#include "wmr/bounds.hpp"

#include <algorithm>
#include <set>

#include "wmr/core_model.hpp"
#include "wmr/errors.hpp"
#include "wmr/scheme.hpp"

namespace wmr {

namespace {

void check_K(int K) {
  if (K < 3) {
    throw ParameterError("K must be at least 3, got " + std::to_string(K));
  }
}

void check_load(int K, const Rational& r) {
  check_K(K);
  if (r < 1 || r > K) {
    throw ParameterError("load r=" + to_string(r) + " outside [1, " + std::to_string(K) + "]");
  }
}

// Sign of the turn o -> a -> b; positive for a counter-clockwise turn.
Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

PiecewiseLinearEnvelope novel_envelope(int K) {
  std::vector<Point> points;
  for (int r = 1; r <= K; ++r) {
    points.push_back({Rational(r), delta_ub(K, r)});
  }
  return lower_convex_envelope(std::move(points));
}

PiecewiseLinearEnvelope coefficient_envelope(int K, int t) {
  std::vector<Point> points;
  for (int i = 1; i <= K; ++i) {
    points.push_back({Rational(i), coefficient_c(K, t, i)});
  }
  return lower_convex_envelope(std::move(points));
}

}  // namespace

PiecewiseLinearEnvelope::PiecewiseLinearEnvelope(std::vector<Point> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) {
    throw ParameterError("envelope needs at least one breakpoint");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1].x < breakpoints_[i].x)) {
      throw ParameterError("envelope breakpoints must be strictly increasing in x");
    }
  }
}

Rational PiecewiseLinearEnvelope::operator()(const Rational& x) const {
  if (x < min_x() || x > max_x()) {
    throw ParameterError("x=" + to_string(x) + " outside envelope domain [" +
                         to_string(min_x()) + ", " + to_string(max_x()) + "]");
  }
  auto hi = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x,
                             [](const Point& p, const Rational& v) { return p.x < v; });
  if (hi->x == x) {
    return hi->y;
  }
  auto lo = std::prev(hi);
  return lo->y + (hi->y - lo->y) * (x - lo->x) / (hi->x - lo->x);
}

PiecewiseLinearEnvelope lower_convex_envelope(std::vector<Point> points) {
  if (points.empty()) {
    throw ParameterError("lower convex envelope of an empty point set");
  }
  std::sort(points.begin(), points.end(),
            [](const Point& a, const Point& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i - 1].x == points[i].x) {
      throw ParameterError("duplicate x value " + to_string(points[i].x) +
                           " in envelope input");
    }
  }
  std::vector<Point> hull;
  for (auto& p : points) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) {
      hull.pop_back();
    }
    hull.push_back(std::move(p));
  }
  return PiecewiseLinearEnvelope(std::move(hull));
}

Rational delta_ub(int K, int r) {
  check_load(K, Rational(r));
  const Rational one_minus = 1 - Rational(r, K);
  if (2 * r < K) {
    return one_minus * Rational(BigInt(r) * (K - 1) + K - r - 1,
                                BigInt(r) * (K - 1) * (K - 1) + BigInt(r) * (K - 2));
  }
  return one_minus / K;
}

Rational delta_ub_envelope(int K, const Rational& r) {
  check_load(K, r);
  return novel_envelope(K)(r);
}

Rational coefficient_c(int K, int t, int i) {
  check_K(K);
  if (t < 1 || t > K / 2) {
    throw ParameterError("t=" + std::to_string(t) + " outside [1, floor(K/2)]");
  }
  if (i < 1 || i > K) {
    throw ParameterError("i=" + std::to_string(i) + " outside [1, K]");
  }
  if (i > t) {
    return 0;
  }
  return Rational(binomial(K - i, t - i) * (K - t - i), binomial(K, t) * t);
}

Rational delta_lb(int K, const Rational& r) {
  check_load(K, r);
  const Rational base = 1 - r / K;
  if (r == 1) {
    return Rational(1, K) * (2 - Rational(3, K));
  }
  if (r < 2) {
    Rational best = coefficient_envelope(K, 1)(r);
    for (int t = 2; t <= K / 2; ++t) {
      best = std::max(best, coefficient_envelope(K, t)(r));
    }
    return (base + best) / K;
  }
  return (base + coefficient_envelope(K, K / 2)(r)) / K;
}

Rational delta_ub_oneshot(int K, const Rational& r) {
  check_load(K, r);
  std::vector<Point> points;
  for (int q = 1; q <= K; ++q) {
    points.push_back({Rational(q), (1 - Rational(q, K)) / std::min(K, 2 * q)});
  }
  return lower_convex_envelope(std::move(points))(r);
}

Rational sum_dof_groups_lb(int K, int r) {
  check_K(K);
  if (r < 1 || r >= K || K % r != 0) {
    throw ParameterError("grouped Sum-DoF needs r | K and 1 <= r < K");
  }
  const int groups = K / r;
  if (groups <= 3) {
    return Rational(2 * r);
  }
  return Rational(K * (K - r) - r * r, 2 * K - 3 * r);
}

Rational delta_ub_groups(int K, const Rational& r) {
  check_load(K, r);
  std::vector<Point> points{{Rational(K), Rational(0)}};
  for (int q = 1; q < K; ++q) {
    if (K % q == 0) {
      points.push_back({Rational(q), (1 - Rational(q, K)) / sum_dof_groups_lb(K, q)});
    }
  }
  return lower_convex_envelope(std::move(points))(r);
}

Rational ndt_from_sumdof(int K, const Rational& r, const Rational& sumdof) {
  check_load(K, r);
  if (sumdof <= 0) {
    throw ParameterError("Sum-DoF must be positive, got " + to_string(sumdof));
  }
  return (1 - r / K) / sumdof;
}

std::string to_string(CurveLabel label) {
  switch (label) {
    case CurveLabel::ub_novel:
      return "ub_novel_lowc";
    case CurveLabel::ub_oneshot:
      return "ub_oneshot";
    case CurveLabel::ub_groups:
      return "ub_groups";
    case CurveLabel::lb:
      return "lb";
  }
  return "unknown";
}

std::vector<Rational> load_grid(int K, const Rational& step) {
  check_K(K);
  if (step <= 0) {
    throw ParameterError("grid step must be positive");
  }
  std::set<Rational> grid;
  for (Rational r = 1; r <= K; r += step) {
    grid.insert(r);
  }
  for (int i = 1; i <= K; ++i) {
    grid.insert(Rational(i));
  }
  return {grid.begin(), grid.end()};
}

std::vector<BoundCurve> bound_curves(int K, const Rational& step) {
  const auto grid = load_grid(K, step);
  const auto novel = novel_envelope(K);
  std::vector<BoundCurve> curves{{CurveLabel::ub_novel, {}},
                                 {CurveLabel::ub_oneshot, {}},
                                 {CurveLabel::ub_groups, {}},
                                 {CurveLabel::lb, {}}};
  for (const auto& r : grid) {
    curves[0].samples.push_back({r, novel(r)});
    curves[1].samples.push_back({r, delta_ub_oneshot(K, r)});
    curves[2].samples.push_back({r, delta_ub_groups(K, r)});
    curves[3].samples.push_back({r, delta_lb(K, r)});
  }
  return curves;
}

bool CorollaryReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

CorollaryReport corollary_checks(int K) {
  check_K(K);
  CorollaryReport report;
  report.K = K;
  const auto novel = novel_envelope(K);
  const int half_up = (K + 1) / 2;     // ceil(K/2)
  const int half_down_up = K / 2;      // ceil((K-1)/2)

  for (int r = half_up; r <= K; ++r) {
    const Rational ub = novel(r);
    const Rational lb = delta_lb(K, r);
    const Rational closed = (1 - Rational(r, K)) / K;
    report.checks.push_back({"optimal_ub_equals_closed_form", r, ub, closed, "==", ub == closed});
    report.checks.push_back({"optimal_lb_equals_closed_form", r, lb, closed, "==", lb == closed});
  }
  for (int r = 2; r < half_up; ++r) {
    const Rational ub = novel(r);
    const Rational groups = delta_ub_groups(K, r);
    report.checks.push_back({"improves_on_grouped_ia", r, ub, groups, "<", ub < groups});
  }
  for (int r = 1; r < half_down_up; ++r) {
    const Rational ub = novel(r);
    const Rational oneshot = delta_ub_oneshot(K, r);
    report.checks.push_back({"improves_on_one_shot", r, ub, oneshot, "<", ub < oneshot});
  }
  for (int r = 1; 2 * r < K; ++r) {
    const Rational ub = delta_ub(K, r);
    const Rational via_scheme =
        ndt_from_sumdof(K, r, sum_dof_closed_form(SystemParams::with_integer_load(K, r)));
    report.checks.push_back({"ub_matches_scheme_sum_dof", r, ub, via_scheme, "==",
                             ub == via_scheme});
  }
  return report;
}

std::vector<PlateauDiagnostic> lb_plateau_diagnostics(int K) {
  check_K(K);
  std::vector<PlateauDiagnostic> out;
  for (int i = 1; i < K; ++i) {
    PlateauDiagnostic d;
    d.i = i;
    d.left = delta_lb(K, i);
    d.mid = delta_lb(K, Rational(2 * i + 1, 2));
    d.right = delta_lb(K, i + 1);
    d.constant = d.left == d.mid && d.mid == d.right;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace wmr
