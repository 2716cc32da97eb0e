#pragma once

// Computable side of the NDT converse: per-cut counting bound, the aggregated
// constraint over all cuts of a given size, the inner minimization over file
// masses (structured solution and exhaustive oracle), and the exact
// monotonicity/convexity audit of the coefficients.

#include <cstdint>
#include <optional>
#include <vector>

#include "wmr/core_model.hpp"
#include "wmr/rational.hpp"

namespace wmr {

/// Bound d_T + d_R <= |T| / (W_t + W_r) for a disjoint transmit set T and
/// receive set R of equal size.
struct CutBound {
  NodeSet T;
  NodeSet R;
  std::int64_t W_t = 0;
  std::int64_t W_r = 0;
  /// Empty when W_t + W_r = 0: the cut imposes no constraint.
  std::optional<Rational> bound;
};

CutBound cut_bound(const FileAssignment& assignment, const NodeSet& T, const NodeSet& R);

/// Sum of W_t + W_r over every ordered pair of disjoint size-t sets,
/// normalized by C(K,t) C(K-t,t) t. Equals aggregated_rhs for the
/// assignment's load and masses.
Rational aggregated_cut_counts(const FileAssignment& assignment, int t);

/// b_i = number of files stored at exactly i nodes, for i in [K].
struct MassVector {
  std::vector<std::int64_t> b;

  int K() const { return static_cast<int>(b.size()); }
  std::int64_t N() const;
  /// sum_i i b_i
  std::int64_t weighted() const;
  std::int64_t at(int i) const { return b.at(static_cast<std::size_t>(i - 1)); }

  friend bool operator==(const MassVector&, const MassVector&) = default;
};

MassVector mass_vector(const FileAssignment& assignment);

/// N - rN/K + sum_{i<=t} C_t(i) b_i. Throws ParameterError unless b sums to
/// N and sum i b_i <= rN.
Rational aggregated_rhs(int K, int t, const Rational& r, std::int64_t N, const MassVector& b);

struct MassSolution {
  MassVector masses;
  /// sum_i C_t(i) b_i
  Rational objective;
  /// File count actually used (N times scale).
  std::int64_t N = 0;
  std::int64_t scale = 1;
};

/// Two-point solution on floor(r) and ceil(r); objective 0 once r >= t+1.
/// When rN is not an integer N is scaled up to make it one.
MassSolution minimize_masses_structured(int K, int t, const Rational& r, std::int64_t N);

struct BruteForceBudget {
  int max_K = 8;
  std::int64_t max_N = 8;
};

/// Exhaustive minimum over integer masses with sum b_i = N and
/// sum i b_i <= rN. Throws ResourceError beyond the budget.
MassSolution minimize_masses_bruteforce(int K, int t, const Rational& r, std::int64_t N,
                                        const BruteForceBudget& budget = {});

struct CoefficientAudit {
  int t = 0;
  std::vector<BigInt> D;        // D_i for i in [t]
  std::vector<Rational> C;      // C_t(i) for i in [t]
  bool D_decreasing = false;
  bool D_convex = false;
  bool C_decreasing = false;
  bool C_convex = false;

  bool pass() const { return D_decreasing && D_convex && C_decreasing && C_convex; }
};

struct ConvexityReport {
  int K = 0;
  std::vector<CoefficientAudit> per_t;

  bool all_pass() const;
};

/// D_i = (K-i)!/(t-i)! (K-t-i) for every t in [floor(K/2)], exact.
ConvexityReport convexity_audit(int K);

/// (1/K)(1 - r/K + min objective / N) with t = 1 at r = 1, the best t for
/// 1 < r < 2 and t = floor(K/2) for r >= 2.
Rational delta_lb_from_converse(int K, const Rational& r);

}  // namespace wmr
