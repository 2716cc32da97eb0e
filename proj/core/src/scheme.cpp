#include "wmr/scheme.hpp"

#include <algorithm>
#include <stdexcept>

#include "wmr/errors.hpp"

namespace wmr {

namespace {

void check_scheme_params(const SystemParams& params) {
  const int r = params.r();
  if (r < 1 || r > params.K() - 2) {
    throw ParameterError("alignment scheme needs 1 <= r <= K-2, got K=" + std::to_string(params.K()) +
                         ", r=" + std::to_string(r));
  }
}

void check_precoder(const SystemParams& params, const NodeSet& precoder) {
  precoder.check_within(params.K());
  if (precoder.contains(1)) {
    throw ParameterError("precoder set " + precoder.to_string() + " must not contain node 1");
  }
  if (static_cast<int>(precoder.size()) != params.r()) {
    throw ParameterError("precoder set " + precoder.to_string() + " must have size r=" +
                         std::to_string(params.r()));
  }
}

void check_node(const SystemParams& params, NodeIndex node) {
  if (node < 1 || node > params.K()) {
    throw ParameterError("node " + std::to_string(node) + " outside [1, " + std::to_string(params.K()) + "]");
  }
}

// Codewords of v_{R,k}: sender k, team R + k - j', one per j' in R (j' != 1
// when the sender is K, since K never serves node 1).
std::vector<MessageId> v_vector(const SystemParams& params, const NodeSet& R, NodeIndex k) {
  std::vector<MessageId> out;
  for (NodeIndex jp : R) {
    if (k == params.K() && jp == 1) continue;
    out.push_back(make_message(k, R.with(k).without(jp), jp));
  }
  return out;
}

}  // namespace

std::string MessageId::label() const {
  return "b_{" + std::to_string(sender) + "," + team.to_string() + "}^" + std::to_string(dest);
}

MessageId make_message(NodeIndex sender, NodeSet team, NodeIndex dest) {
  if (!team.contains(sender)) {
    throw ParameterError("sender " + std::to_string(sender) + " not in team " + team.to_string());
  }
  if (team.contains(dest)) {
    throw ParameterError("destination " + std::to_string(dest) + " inside team " + team.to_string());
  }
  return MessageId{sender, std::move(team), dest};
}

PrecoderAssignment::PrecoderAssignment(std::map<NodeSet, std::vector<MessageId>> lists)
    : lists_(std::move(lists)) {
  for (auto& [precoder, messages] : lists_) {
    std::sort(messages.begin(), messages.end());
    for (const auto& m : messages) {
      if (!owner_.emplace(m, precoder).second) {
        throw ParameterError("codeword " + m.label() + " assigned to more than one precoder");
      }
    }
  }
}

const std::vector<MessageId>& PrecoderAssignment::codewords(const NodeSet& precoder) const {
  auto it = lists_.find(precoder);
  if (it == lists_.end()) {
    throw ParameterError("unknown precoder " + precoder.to_string());
  }
  return it->second;
}

const NodeSet& PrecoderAssignment::precoder_of(const MessageId& message) const {
  auto it = owner_.find(message);
  if (it == owner_.end()) {
    throw ParameterError("codeword " + message.label() + " has no precoder");
  }
  return it->second;
}

std::vector<MessageId> messages_for(const SystemParams& params, NodeIndex dest) {
  check_scheme_params(params);
  check_node(params, dest);
  const int K = params.K();
  std::vector<MessageId> out;
  for (const auto& team : enumerate_subsets(K, params.r(), NodeSet{dest})) {
    for (NodeIndex k : team) {
      if (dest == 1 && k == K) continue;
      out.push_back(MessageId{k, team, dest});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MessageId> generate_messages(const SystemParams& params) {
  std::vector<MessageId> out;
  for (NodeIndex j = 1; j <= params.K(); ++j) {
    auto part = messages_for(params, j);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<NodeSet> precoder_sets(const SystemParams& params) {
  check_scheme_params(params);
  return enumerate_subsets(params.K(), params.r(), NodeSet{1});
}

PrecoderAssignment assign_precoders(const SystemParams& params) {
  const int K = params.K();
  std::map<NodeSet, std::vector<MessageId>> lists;
  for (const auto& R : precoder_sets(params)) {
    auto& list = lists[R];
    for (NodeIndex k = 1; k <= K; ++k) {
      if (R.contains(k)) continue;
      for (NodeIndex j : R) {
        list.push_back(make_message(k, R.with(k).without(j), j));
      }
    }
    for (NodeIndex j : R) {
      for (NodeIndex k : R) {
        if (j != k) list.push_back(make_message(k, R.with(1).without(j), j));
      }
    }
    for (NodeIndex k : R) {
      if (k != K) list.push_back(make_message(k, R, 1));
    }
  }
  return PrecoderAssignment(std::move(lists));
}

std::vector<ChannelPair> channel_set_h(const SystemParams& params, const NodeSet& precoder) {
  check_scheme_params(params);
  check_precoder(params, precoder);
  const int K = params.K();
  std::vector<ChannelPair> out;
  for (NodeIndex j = 1; j <= K; ++j) {
    if (precoder.contains(j)) continue;
    for (NodeIndex k = 1; k <= K; ++k) {
      if (k == j) continue;
      if (j == 1 && precoder.contains(k)) continue;
      out.emplace_back(j, k);
    }
  }
  if (static_cast<int>(out.size()) != params.gamma()) {
    throw std::logic_error("|H_R| differs from Gamma for " + precoder.to_string());
  }
  return out;
}

DimensionAudit dimension_audit(const SystemParams& params, int eta) {
  check_scheme_params(params);
  if (eta < 1) {
    throw ParameterError("eta must be at least 1, got " + std::to_string(eta));
  }
  const int K = params.K();
  const int r = params.r();
  const unsigned gamma = static_cast<unsigned>(params.gamma());

  DimensionAudit audit;
  audit.eta = eta;
  audit.gamma = params.gamma();
  audit.block_length = params.block_length(eta);
  const BigInt signal_width = power(BigInt(eta), gamma);
  const BigInt interference_width = power(BigInt(eta + 1), gamma);
  const BigInt limit_den = BigInt(K - 2) * binomial(K - 2, r - 1) + binomial(K - 1, r);

  const auto precoders = precoder_sets(params);
  for (NodeIndex j = 1; j <= K; ++j) {
    NodeDimensions node;
    node.node = j;
    node.codewords = messages_for(params, j).size();
    std::size_t blocks = 0;
    for (const auto& R : precoders) {
      if (!R.contains(j)) ++blocks;
    }
    node.signal_columns = signal_width * node.codewords;
    node.interference_columns = interference_width * blocks;
    node.dof = make_rational(node.signal_columns, audit.block_length);
    node.dof_limit = make_rational(BigInt(node.codewords), limit_den);

    const BigInt total = node.signal_columns + node.interference_columns;
    if (j == 1 && total != audit.block_length) {
      throw std::logic_error("node 1 columns do not fill the block length");
    }
    if (total > audit.block_length) {
      throw std::logic_error("node " + std::to_string(j) + " columns exceed the block length");
    }
    audit.sum_dof += node.dof;
    audit.sum_dof_limit += node.dof_limit;
    audit.nodes.push_back(std::move(node));
  }
  return audit;
}

Rational sum_dof_closed_form(const SystemParams& params) {
  check_scheme_params(params);
  const BigInt K = params.K();
  const BigInt r = params.r();
  return make_rational(r * ((K - 1) * (K - 1) + (K - 2)), r * (K - 2) + K - 1);
}

Rational sum_dof_combinatorial(const SystemParams& params) {
  check_scheme_params(params);
  const int K = params.K();
  const int r = params.r();
  const BigInt a = BigInt(K - 2) * binomial(K - 2, r - 1);
  return make_rational(a + BigInt(K - 1) * r * binomial(K - 1, r), a + binomial(K - 1, r));
}

std::vector<EncodingTerm> encoding_terms(const SystemParams& params, NodeIndex sender) {
  check_scheme_params(params);
  check_node(params, sender);
  const int K = params.K();
  const int r = params.r();
  const NodeIndex k = sender;
  std::vector<EncodingTerm> out;

  if (k == 1) {
    for (const auto& R : enumerate_subsets(K, r, NodeSet{1})) {
      for (NodeIndex j : R) {
        out.push_back({R, make_message(1, R.with(1).without(j), j)});
      }
    }
  } else {
    // Sets avoiding node 1 precode directly; sets containing node 1 swap it
    // for the sender.
    for (const auto& R : enumerate_subsets(K, r, NodeSet{1, k})) {
      for (NodeIndex j : R) {
        out.push_back({R, make_message(k, R.with(k).without(j), j)});
      }
    }
    for (const auto& R : enumerate_subsets(K, r, NodeSet{k})) {
      if (!R.contains(1)) continue;
      for (NodeIndex j : R) {
        if (k == K && j == 1) continue;
        out.push_back({R.with(k).without(1), make_message(k, R.with(k).without(j), j)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignalTerm> cleaned_signal_terms(const SystemParams& params, NodeIndex node) {
  check_scheme_params(params);
  check_node(params, node);
  const int K = params.K();
  const int r = params.r();
  const NodeIndex j = node;
  std::vector<SignalTerm> out;

  auto add_interference = [&](const NodeSet& R, NodeIndex k, const NodeSet& precoder) {
    for (auto& m : v_vector(params, R, k)) {
      out.push_back({{j, k}, precoder, std::move(m), false});
    }
  };

  if (j == 1) {
    for (const auto& R : enumerate_subsets(K, r)) {
      if (!R.contains(1)) continue;
      for (NodeIndex k = 2; k <= K - 1; ++k) {
        if (R.contains(k)) continue;
        const NodeSet precoder = R.with(k).without(1);
        out.push_back({{1, k}, precoder, make_message(k, precoder, 1), true});
      }
    }
    for (const auto& R : enumerate_subsets(K, r, NodeSet{1})) {
      for (NodeIndex k = 2; k <= K; ++k) {
        if (!R.contains(k)) add_interference(R, k, R);
      }
    }
  } else {
    for (const auto& R : enumerate_subsets(K, r, NodeSet{1})) {
      if (!R.contains(j)) continue;
      for (NodeIndex k = 1; k <= K; ++k) {
        if (R.contains(k)) continue;
        out.push_back({{j, k}, R, make_message(k, R.with(k).without(j), j), true});
      }
    }
    for (const auto& R : enumerate_subsets(K, r)) {
      if (!R.contains(1) || !R.contains(j)) continue;
      for (NodeIndex k = 2; k <= K; ++k) {
        if (R.contains(k)) continue;
        out.push_back({{j, k}, R.with(k).without(1), make_message(k, R.with(k).without(j), j), true});
      }
    }
    for (const auto& R : enumerate_subsets(K, r, NodeSet{1, j})) {
      for (NodeIndex k = 1; k <= K; ++k) {
        if (k != j && !R.contains(k)) add_interference(R, k, R);
      }
    }
    for (const auto& R : enumerate_subsets(K, r, NodeSet{j})) {
      if (!R.contains(1)) continue;
      for (NodeIndex k = 2; k <= K; ++k) {
        if (k != j && !R.contains(k)) add_interference(R, k, R.with(k).without(1));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wmr
