#include "wmr/core_model.hpp"

#include <algorithm>
#include <numeric>

#include "wmr/errors.hpp"

namespace wmr {

NodeSet::NodeSet(std::initializer_list<NodeIndex> members)
    : NodeSet(std::vector<NodeIndex>(members)) {}

NodeSet::NodeSet(std::vector<NodeIndex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw ParameterError("node set has duplicate members");
  }
  if (!members_.empty() && members_.front() < 1) {
    throw ParameterError("node indices are 1-based");
  }
}

NodeSet NodeSet::range(NodeIndex first, NodeIndex last) {
  std::vector<NodeIndex> members;
  for (NodeIndex i = first; i <= last; ++i) {
    members.push_back(i);
  }
  return NodeSet(std::move(members));
}

bool NodeSet::contains(NodeIndex node) const {
  return std::binary_search(members_.begin(), members_.end(), node);
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

bool NodeSet::is_disjoint_from(const NodeSet& other) const {
  return std::none_of(members_.begin(), members_.end(),
                      [&](NodeIndex i) { return other.contains(i); });
}

NodeSet NodeSet::with(NodeIndex node) const {
  if (contains(node)) {
    return *this;
  }
  NodeSet out;
  out.members_ = members_;
  out.members_.insert(std::upper_bound(out.members_.begin(), out.members_.end(), node),
                      node);
  if (node < 1) {
    throw ParameterError("node indices are 1-based");
  }
  return out;
}

NodeSet NodeSet::without(NodeIndex node) const {
  NodeSet out;
  out.members_.reserve(members_.size());
  std::copy_if(members_.begin(), members_.end(), std::back_inserter(out.members_),
               [node](NodeIndex i) { return i != node; });
  return out;
}

NodeSet NodeSet::united(const NodeSet& other) const {
  NodeSet out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out.members_));
  return out;
}

NodeSet NodeSet::minus(const NodeSet& other) const {
  NodeSet out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out.members_));
  return out;
}

void NodeSet::check_within(int K) const {
  if (!members_.empty() && members_.back() > K) {
    throw ParameterError("node set " + to_string() + " leaves [1, " + std::to_string(K) +
                         "]");
  }
}

std::string NodeSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += std::to_string(members_[i]);
  }
  return out + "}";
}

SystemParams SystemParams::with_integer_load(int K, int r) {
  if (K < 3) {
    throw ParameterError("K must be at least 3, got " + std::to_string(K));
  }
  if (r < 1 || r >= K) {
    throw ParameterError("integer load r must satisfy 1 <= r < K, got r=" +
                         std::to_string(r) + ", K=" + std::to_string(K));
  }
  return SystemParams(K, Rational(r));
}

SystemParams SystemParams::with_rational_load(int K, const Rational& r) {
  if (K < 3) {
    throw ParameterError("K must be at least 3, got " + std::to_string(K));
  }
  if (r < 1 || r > K) {
    throw ParameterError("load r must lie in [1, K], got r=" + wmr::to_string(r));
  }
  return SystemParams(K, r);
}

int SystemParams::r() const {
  if (!has_integer_load()) {
    throw ParameterError("load " + wmr::to_string(r_) + " is not an integer");
  }
  return boost::multiprecision::numerator(r_).convert_to<int>();
}

int SystemParams::gamma() const { return K_ * (K_ - r() - 1); }

BigInt SystemParams::block_length(int eta) const {
  if (eta < 1) {
    throw ParameterError("eta must be at least 1");
  }
  const int rr = r();
  const auto g = static_cast<unsigned>(gamma());
  return BigInt(K_ - 2) * binomial(K_ - 2, rr - 1) * power(BigInt(eta), g) +
         binomial(K_ - 1, rr) * power(BigInt(eta + 1), g);
}

std::vector<NodeSet> enumerate_subsets(int K, int size, const NodeSet& exclude) {
  exclude.check_within(K);
  std::vector<NodeIndex> pool;
  for (NodeIndex i = 1; i <= K; ++i) {
    if (!exclude.contains(i)) {
      pool.push_back(i);
    }
  }
  const int n = static_cast<int>(pool.size());
  if (size < 0 || size > n) {
    throw ParameterError("subset size " + std::to_string(size) + " outside [0, " +
                         std::to_string(n) + "]");
  }
  std::vector<NodeSet> out;
  std::vector<int> idx(static_cast<std::size_t>(size));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<NodeIndex> members;
    members.reserve(idx.size());
    for (int i : idx) {
      members.push_back(pool[static_cast<std::size_t>(i)]);
    }
    out.emplace_back(std::move(members));
    // Advance to the next combination in lexicographic order.
    int pos = size - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - size + pos) {
      --pos;
    }
    if (pos < 0) {
      break;
    }
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < size; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return out;
}

FileAssignment::FileAssignment(int K, std::map<NodeSet, std::int64_t> bundle_counts) : K_(K) {
  if (K < 1) {
    throw ParameterError("file assignment needs at least one node");
  }
  for (auto& [team, count] : bundle_counts) {
    if (team.empty()) {
      throw ParameterError("every file must be stored at some node");
    }
    team.check_within(K);
    if (count < 0) {
      throw ParameterError("negative bundle count for team " + team.to_string());
    }
    if (count > 0) {
      bundles_.emplace(team, count);
      total_ += count;
    }
  }
}

std::int64_t FileAssignment::bundle_count(const NodeSet& team) const {
  auto it = bundles_.find(team);
  return it == bundles_.end() ? 0 : it->second;
}

std::int64_t FileAssignment::files_at(NodeIndex node) const {
  std::int64_t count = 0;
  for (const auto& [team, b] : bundles_) {
    if (team.contains(node)) {
      count += b;
    }
  }
  return count;
}

FileAssignment FileAssignment::relabeled(std::span<const NodeIndex> permutation) const {
  if (permutation.size() != static_cast<std::size_t>(K_)) {
    throw ParameterError("relabeling must list one image per node");
  }
  NodeSet image{std::vector<NodeIndex>(permutation.begin(), permutation.end())};
  if (image != NodeSet::range(1, K_)) {
    throw ParameterError("relabeling is not a permutation of [1, K]");
  }
  std::map<NodeSet, std::int64_t> out;
  for (const auto& [team, b] : bundles_) {
    std::vector<NodeIndex> mapped;
    for (NodeIndex i : team) {
      mapped.push_back(permutation[static_cast<std::size_t>(i - 1)]);
    }
    out.emplace(NodeSet(std::move(mapped)), b);
  }
  return FileAssignment(K_, std::move(out));
}

FileAssignment symmetric_bundle_assignment(int K, int r, std::int64_t N) {
  if (K < 1 || r < 1 || r > K) {
    throw ParameterError("symmetric assignment needs 1 <= r <= K");
  }
  const std::int64_t teams = to_int64(binomial(K, r), "C(K, r)");
  if (N <= 0 || N % teams != 0) {
    throw ParameterError("N=" + std::to_string(N) + " must be a positive multiple of C(" +
                         std::to_string(K) + "," + std::to_string(r) +
                         ")=" + std::to_string(teams));
  }
  std::map<NodeSet, std::int64_t> bundles;
  for (auto& team : enumerate_subsets(K, r)) {
    bundles.emplace(std::move(team), N / teams);
  }
  return FileAssignment(K, std::move(bundles));
}

Rational computation_load(const FileAssignment& assignment) {
  if (assignment.total_files() == 0) {
    throw ParameterError("computation load is undefined without files");
  }
  BigInt stored = 0;
  for (const auto& [team, b] : assignment.bundles()) {
    stored += BigInt(team.size()) * b;
  }
  return Rational(stored, assignment.total_files());
}

std::int64_t ShuffleDemand::ivas_for(NodeIndex node) const {
  auto it = per_destination.find(node);
  if (it == per_destination.end()) {
    return 0;
  }
  std::int64_t sum = 0;
  for (const auto& entry : it->second) {
    sum += entry.ivas;
  }
  return sum;
}

std::int64_t ShuffleDemand::total_ivas() const {
  std::int64_t sum = 0;
  for (const auto& [node, entries] : per_destination) {
    sum += ivas_for(node);
  }
  return sum;
}

ShuffleDemand shuffle_demand(const FileAssignment& assignment) {
  ShuffleDemand demand;
  demand.K = assignment.K();
  for (NodeIndex j = 1; j <= assignment.K(); ++j) {
    std::vector<DemandEntry> entries;
    for (const auto& [team, b] : assignment.bundles()) {
      if (!team.contains(j)) {
        entries.push_back({team, b});
      }
    }
    if (!entries.empty()) {
      demand.per_destination.emplace(j, std::move(entries));
    }
  }
  return demand;
}

}  // namespace wmr
