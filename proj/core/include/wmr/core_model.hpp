#pragma once

// System parameters, node-subset combinatorics, file assignments and shuffle
// demands. Nodes are 1-based throughout: node 1 plays a distinguished role in
// the alignment scheme and 1-based indices keep that visible.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wmr/rational.hpp"

namespace wmr {

using NodeIndex = int;

/// Sorted, duplicate-free set of 1-based node indices.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeIndex> members);
  explicit NodeSet(std::vector<NodeIndex> members);

  /// {first, first+1, ..., last}; empty when last < first.
  static NodeSet range(NodeIndex first, NodeIndex last);

  const std::vector<NodeIndex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  NodeIndex front() const { return members_.front(); }
  NodeIndex back() const { return members_.back(); }

  bool contains(NodeIndex node) const;
  bool is_subset_of(const NodeSet& other) const;
  bool is_disjoint_from(const NodeSet& other) const;

  NodeSet with(NodeIndex node) const;
  NodeSet without(NodeIndex node) const;
  NodeSet united(const NodeSet& other) const;
  NodeSet minus(const NodeSet& other) const;

  /// Throws ParameterError unless every member lies in [1, K].
  void check_within(int K) const;

  /// "{1,3}"
  std::string to_string() const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<NodeIndex> members_;
};

/// The node count K together with the computation load r.
///
/// Integer-load parameters (used to construct the alignment scheme) require
/// K >= 3 and 1 <= r < K. Rational-load parameters (used for bound
/// evaluation) require K >= 3 and 1 <= r <= K.
class SystemParams {
 public:
  static SystemParams with_integer_load(int K, int r);
  static SystemParams with_rational_load(int K, const Rational& r);

  int K() const { return K_; }
  const Rational& load() const { return r_; }
  bool has_integer_load() const { return is_integer(r_); }
  /// Throws ParameterError if the load is not an integer.
  int r() const;

  /// Gamma = K (K - r - 1): the number of channel matrices shaping each
  /// precoder.
  int gamma() const;
  /// Block length T(eta) = (K-2) C(K-2, r-1) eta^Gamma + C(K-1, r) (eta+1)^Gamma.
  BigInt block_length(int eta) const;

 private:
  SystemParams(int K, Rational r) : K_(K), r_(std::move(r)) {}

  int K_;
  Rational r_;
};

/// All size-`size` subsets of [K] \ exclude in lexicographic order.
std::vector<NodeSet> enumerate_subsets(int K, int size, const NodeSet& exclude = {});

/// File placement described by bundle counts: b_T files are stored exactly at
/// the nodes of T.
class FileAssignment {
 public:
  FileAssignment(int K, std::map<NodeSet, std::int64_t> bundle_counts);

  int K() const { return K_; }
  std::int64_t total_files() const { return total_; }
  const std::map<NodeSet, std::int64_t>& bundles() const { return bundles_; }

  /// b_T (zero for teams without files).
  std::int64_t bundle_count(const NodeSet& team) const;
  /// |M_k|: number of files stored at node k.
  std::int64_t files_at(NodeIndex node) const;

  /// Applies the relabeling node i -> permutation[i-1].
  FileAssignment relabeled(std::span<const NodeIndex> permutation) const;

 private:
  int K_;
  std::map<NodeSet, std::int64_t> bundles_;
  std::int64_t total_ = 0;
};

/// Splits N files into C(K, r) equal bundles, one per size-r team.
FileAssignment symmetric_bundle_assignment(int K, int r, std::int64_t N);

/// sum_k |M_k| / N, exactly.
Rational computation_load(const FileAssignment& assignment);

struct DemandEntry {
  NodeSet team;
  std::int64_t ivas = 0;

  friend bool operator==(const DemandEntry&, const DemandEntry&) = default;
};

/// IVAs each reducer still needs after the map phase, grouped by the team
/// that can supply them.
struct ShuffleDemand {
  int K = 0;
  std::map<NodeIndex, std::vector<DemandEntry>> per_destination;

  std::int64_t ivas_for(NodeIndex node) const;
  std::int64_t total_ivas() const;
};

ShuffleDemand shuffle_demand(const FileAssignment& assignment);

}  // namespace wmr
