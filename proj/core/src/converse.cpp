#include "wmr/converse.hpp"

#include <boost/integer/common_factor.hpp>

#include "wmr/bounds.hpp"
#include "wmr/errors.hpp"

namespace wmr {

namespace {

void check_t(int K, int t) {
  if (K < 3) throw ParameterError("K must be at least 3, got " + std::to_string(K));
  if (t < 1 || t > K / 2) {
    throw ParameterError("t=" + std::to_string(t) + " outside [1, " + std::to_string(K / 2) + "]");
  }
}

void check_load(int K, const Rational& r) {
  if (r < 1 || r > K) {
    throw ParameterError("load r=" + to_string(r) + " outside [1, " + std::to_string(K) + "]");
  }
}

// C_t(i) C(K,t) t = C(K-i, t-i) (K-t-i) for i <= t, else 0.
std::int64_t integer_weight(int K, int t, int i) {
  if (i > t) return 0;
  return to_int64(binomial(K - i, t - i) * (K - t - i), "weight");
}

Rational objective_of(int K, int t, const MassVector& b) {
  Rational sum = 0;
  for (int i = 1; i <= std::min(t, K); ++i) sum += coefficient_c(K, t, i) * b.at(i);
  return sum;
}

}  // namespace

CutBound cut_bound(const FileAssignment& assignment, const NodeSet& T, const NodeSet& R) {
  const int K = assignment.K();
  T.check_within(K);
  R.check_within(K);
  if (T.size() != R.size()) throw ParameterError("cut sets must have equal size");
  if (T.empty()) throw ParameterError("cut sets must be nonempty");
  if (!T.is_disjoint_from(R)) throw ParameterError("cut sets " + T.to_string() + " and " + R.to_string() + " overlap");

  CutBound cut{T, R, 0, 0, std::nullopt};
  const std::int64_t N = assignment.total_files();
  for (NodeIndex j : R) cut.W_r += N - assignment.files_at(j);

  const NodeSet transmit_side = NodeSet::range(1, K).minus(R);  // T and F
  for (const auto& [team, count] : assignment.bundles()) {
    if (!team.is_subset_of(T)) continue;
    for (NodeIndex j : transmit_side) {
      if (!team.contains(j)) cut.W_t += count;
    }
  }
  const std::int64_t den = cut.W_t + cut.W_r;
  if (den > 0) cut.bound = make_rational(BigInt(static_cast<std::int64_t>(T.size())), BigInt(den));
  return cut;
}

Rational aggregated_cut_counts(const FileAssignment& assignment, int t) {
  const int K = assignment.K();
  check_t(K, t);
  BigInt total = 0;
  for (const auto& T : enumerate_subsets(K, t)) {
    for (const auto& R : enumerate_subsets(K, t, T)) {
      const auto cut = cut_bound(assignment, T, R);
      total += cut.W_t + cut.W_r;
    }
  }
  return make_rational(total, binomial(K, t) * binomial(K - t, t) * t);
}

std::int64_t MassVector::N() const {
  std::int64_t n = 0;
  for (auto v : b) n += v;
  return n;
}

std::int64_t MassVector::weighted() const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += static_cast<std::int64_t>(i + 1) * b[i];
  return s;
}

MassVector mass_vector(const FileAssignment& assignment) {
  MassVector m{std::vector<std::int64_t>(static_cast<std::size_t>(assignment.K()), 0)};
  for (const auto& [team, count] : assignment.bundles()) m.b[team.size() - 1] += count;
  return m;
}

Rational aggregated_rhs(int K, int t, const Rational& r, std::int64_t N, const MassVector& b) {
  check_t(K, t);
  if (b.K() != K) throw ParameterError("mass vector length must equal K");
  for (auto v : b.b) {
    if (v < 0) throw ParameterError("masses must be nonnegative");
  }
  if (b.N() != N) throw ParameterError("masses sum to " + std::to_string(b.N()) + ", expected N=" + std::to_string(N));
  if (Rational(b.weighted()) > r * N) throw ParameterError("masses exceed the load budget rN");
  return Rational(N) - r * N / K + objective_of(K, t, b);
}

MassSolution minimize_masses_structured(int K, int t, const Rational& r, std::int64_t N) {
  check_t(K, t);
  check_load(K, r);
  if (N < 0) throw ParameterError("N must be nonnegative");
  MassSolution sol;
  sol.N = N;
  const BigInt den = denominator(r);
  if ((numerator(r) * N) % den != 0) {
    const BigInt g = boost::integer::gcd(den, BigInt(N));
    sol.scale = to_int64(den / g, "scale");
    sol.N = N * sol.scale;
  }
  sol.masses.b.assign(static_cast<std::size_t>(K), 0);
  const int lo = static_cast<int>(to_int64(floor(r), "floor(r)"));
  const int hi = static_cast<int>(to_int64(ceil(r), "ceil(r)"));
  if (r >= t + 1) {
    sol.masses.b[lo - 1] = sol.N;
  } else {
    const std::int64_t total_load = to_int64(numerator(Rational(r * sol.N)), "rN");
    const std::int64_t upper = total_load - static_cast<std::int64_t>(lo) * sol.N;
    if (hi != lo) sol.masses.b[hi - 1] = upper;
    sol.masses.b[lo - 1] += sol.N - (hi != lo ? upper : 0);
  }
  sol.objective = objective_of(K, t, sol.masses);
  return sol;
}

MassSolution minimize_masses_bruteforce(int K, int t, const Rational& r, std::int64_t N,
                                        const BruteForceBudget& budget) {
  check_t(K, t);
  check_load(K, r);
  if (N < 0) throw ParameterError("N must be nonnegative");
  if (K > budget.max_K || N > budget.max_N) {
    throw ResourceError("brute-force budget exceeded: K=" + std::to_string(K) + " (max " +
                        std::to_string(budget.max_K) + "), N=" + std::to_string(N) + " (max " +
                        std::to_string(budget.max_N) + ")");
  }
  std::vector<std::int64_t> w(static_cast<std::size_t>(K));
  for (int i = 1; i <= K; ++i) w[i - 1] = integer_weight(K, t, i);
  // sum i b_i <= rN  <=>  den * sum i b_i <= num * N
  const std::int64_t num = to_int64(numerator(r), "numerator(r)");
  const std::int64_t den = to_int64(denominator(r), "denominator(r)");
  const std::int64_t budget_load = num * N;

  std::vector<std::int64_t> b(static_cast<std::size_t>(K), 0);
  std::vector<std::int64_t> best;
  std::int64_t best_value = 0;

  // Depth-first over compositions of N into K parts.
  auto search = [&](auto&& self, int i, std::int64_t left, std::int64_t load, std::int64_t value) -> void {
    if (den * load > budget_load) return;
    if (i == K - 1) {
      b[i] = left;
      const std::int64_t full_load = load + static_cast<std::int64_t>(K) * left;
      if (den * full_load <= budget_load) {
        const std::int64_t v = value + w[i] * left;
        if (best.empty() || v < best_value) {
          best = b;
          best_value = v;
        }
      }
      b[i] = 0;
      return;
    }
    for (std::int64_t c = 0; c <= left; ++c) {
      b[i] = c;
      self(self, i + 1, left - c, load + static_cast<std::int64_t>(i + 1) * c, value + w[i] * c);
    }
    b[i] = 0;
  };
  search(search, 0, N, 0, 0);
  if (best.empty()) throw std::logic_error("no feasible mass vector");

  MassSolution sol;
  sol.N = N;
  sol.masses.b = best;
  sol.objective = make_rational(BigInt(best_value), binomial(K, t) * t);
  return sol;
}

bool ConvexityReport::all_pass() const {
  for (const auto& a : per_t) {
    if (!a.pass()) return false;
  }
  return true;
}

ConvexityReport convexity_audit(int K) {
  if (K < 3) throw ParameterError("K must be at least 3, got " + std::to_string(K));
  ConvexityReport report;
  report.K = K;
  for (int t = 1; t <= K / 2; ++t) {
    CoefficientAudit a;
    a.t = t;
    for (int i = 1; i <= t; ++i) {
      BigInt falling = 1;  // (K-i)! / (t-i)!
      for (int v = t - i + 1; v <= K - i; ++v) falling *= v;
      a.D.push_back(falling * (K - t - i));
      a.C.push_back(coefficient_c(K, t, i));
    }
    a.D_decreasing = a.C_decreasing = true;
    a.D_convex = a.C_convex = true;
    for (std::size_t i = 1; i < a.D.size(); ++i) {
      a.D_decreasing = a.D_decreasing && a.D[i - 1] > a.D[i];
      a.C_decreasing = a.C_decreasing && a.C[i - 1] > a.C[i];
    }
    for (std::size_t i = 1; i + 1 < a.D.size(); ++i) {
      a.D_convex = a.D_convex && a.D[i + 1] + a.D[i - 1] >= 2 * a.D[i];
      a.C_convex = a.C_convex && a.C[i + 1] + a.C[i - 1] >= 2 * a.C[i];
    }
    report.per_t.push_back(std::move(a));
  }
  return report;
}

Rational delta_lb_from_converse(int K, const Rational& r) {
  if (K < 3) throw ParameterError("K must be at least 3, got " + std::to_string(K));
  check_load(K, r);
  auto term = [&](int t) {
    const auto sol = minimize_masses_structured(K, t, r, 1);
    return Rational(sol.objective / sol.N);
  };
  Rational best;
  if (r == 1) {
    best = term(1);
  } else if (r < 2) {
    best = term(1);
    for (int t = 2; t <= K / 2; ++t) best = std::max(best, term(t));
  } else {
    best = term(K / 2);
  }
  return (1 - r / K + best) / K;
}

}  // namespace wmr
