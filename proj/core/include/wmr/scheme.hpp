#pragma once

// Symbolic construction of the full-duplex alignment scheme: which codewords
// are sent, which shared precoder carries each, which channel matrices shape
// each precoder, and the resulting dimension counts.

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wmr/core_model.hpp"
#include "wmr/rational.hpp"

namespace wmr {

/// Codeword b_{k,T}^j: known to team T, sent by k in T, wanted by j not in T.
struct MessageId {
  NodeIndex sender = 0;
  NodeSet team;
  NodeIndex dest = 0;

  /// "b_{1,{1,3}}^2"
  std::string label() const;

  friend bool operator==(const MessageId&, const MessageId&) = default;
  /// Canonical order: destination, then sender, then team.
  friend std::strong_ordering operator<=>(const MessageId& a, const MessageId& b) {
    if (auto c = a.dest <=> b.dest; c != 0) return c;
    if (auto c = a.sender <=> b.sender; c != 0) return c;
    return a.team <=> b.team;
  }
};

/// Validating constructor: sender in team, dest outside it.
MessageId make_message(NodeIndex sender, NodeSet team, NodeIndex dest);

/// Ordered pair (receiver j, transmitter k) naming the diagonal channel H_{j,k}.
using ChannelPair = std::pair<NodeIndex, NodeIndex>;

/// Precoder sets R (size r, node 1 excluded) mapped to the canonically
/// ordered codewords they carry.
class PrecoderAssignment {
 public:
  explicit PrecoderAssignment(std::map<NodeSet, std::vector<MessageId>> lists);

  const std::map<NodeSet, std::vector<MessageId>>& lists() const { return lists_; }
  const std::vector<MessageId>& codewords(const NodeSet& precoder) const;
  const NodeSet& precoder_of(const MessageId& message) const;
  std::size_t total_codewords() const { return owner_.size(); }

 private:
  std::map<NodeSet, std::vector<MessageId>> lists_;
  std::map<MessageId, NodeSet> owner_;
};

/// Every codeword of the scheme in canonical order. Requires 1 <= r <= K-2.
std::vector<MessageId> generate_messages(const SystemParams& params);

/// Messages addressed to node j, canonical order.
std::vector<MessageId> messages_for(const SystemParams& params, NodeIndex dest);

PrecoderAssignment assign_precoders(const SystemParams& params);

/// All precoder sets: size-r subsets of {2, ..., K}.
std::vector<NodeSet> precoder_sets(const SystemParams& params);

/// H_R: channels whose powers shape U_R, sorted. |H_R| = Gamma.
std::vector<ChannelPair> channel_set_h(const SystemParams& params, const NodeSet& precoder);

struct NodeDimensions {
  NodeIndex node = 0;
  std::size_t codewords = 0;
  BigInt signal_columns;
  BigInt interference_columns;
  Rational dof;        // signal_columns / T at this eta
  Rational dof_limit;  // eta -> infinity
};

struct DimensionAudit {
  int eta = 0;
  int gamma = 0;
  BigInt block_length;
  std::vector<NodeDimensions> nodes;
  Rational sum_dof;
  Rational sum_dof_limit;
};

/// Column bookkeeping of the stacked receive matrices at a finite eta. Throws
/// std::logic_error if node 1 does not exactly fill T columns or another node
/// exceeds T.
DimensionAudit dimension_audit(const SystemParams& params, int eta);

/// r((K-1)^2 + (K-2)) / (r(K-2) + K - 1).
Rational sum_dof_closed_form(const SystemParams& params);

/// [(K-2)C(K-2,r-1) + (K-1) r C(K-1,r)] / [(K-2)C(K-2,r-1) + C(K-1,r)].
Rational sum_dof_combinatorial(const SystemParams& params);

/// One precoded codeword in a node's transmit signal.
struct EncodingTerm {
  NodeSet precoder;
  MessageId message;

  friend bool operator==(const EncodingTerm&, const EncodingTerm&) = default;
  friend auto operator<=>(const EncodingTerm&, const EncodingTerm&) = default;
};

/// Expansion of X_k written out from the per-node encoding sums (node 1,
/// nodes 2..K-1, node K), independent of assign_precoders.
std::vector<EncodingTerm> encoding_terms(const SystemParams& params, NodeIndex sender);

/// One term H_{j,k} U_R b in a cleaned receive signal.
struct SignalTerm {
  ChannelPair channel;
  NodeSet precoder;
  MessageId message;
  bool desired = false;

  friend bool operator==(const SignalTerm&, const SignalTerm&) = default;
  friend auto operator<=>(const SignalTerm&, const SignalTerm&) = default;
};

/// Expansion of node j's cleaned signal (desired terms and v-vector
/// interference terms), written out from the cleaned-signal sums rather
/// than derived from the assignment.
std::vector<SignalTerm> cleaned_signal_terms(const SystemParams& params, NodeIndex node);

}  // namespace wmr
