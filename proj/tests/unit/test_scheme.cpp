#include <gtest/gtest.h>

#include <set>

#include "wmr/errors.hpp"
#include "wmr/scheme.hpp"

using namespace wmr;

namespace {

MessageId msg(int k, NodeSet team, int j) { return make_message(k, std::move(team), j); }

std::set<MessageId> as_set(const std::vector<MessageId>& v) { return {v.begin(), v.end()}; }

const SystemParams k4r2 = SystemParams::with_integer_load(4, 2);

}  // namespace

TEST(MessageId, LabelAndValidation) {
  EXPECT_EQ(msg(1, {1, 3}, 2).label(), "b_{1,{1,3}}^2");
  EXPECT_THROW(make_message(2, NodeSet{1, 3}, 4), ParameterError);
  EXPECT_THROW(make_message(1, NodeSet{1, 3}, 3), ParameterError);
  EXPECT_LT(msg(4, {3, 4}, 1), msg(1, {1, 3}, 2));  // destination first
}

TEST(GenerateMessages, WorkedExampleLists) {
  EXPECT_EQ(as_set(messages_for(k4r2, 1)),
            (std::set<MessageId>{msg(2, {2, 3}, 1), msg(3, {2, 3}, 1), msg(2, {2, 4}, 1), msg(3, {3, 4}, 1)}));
  EXPECT_EQ(as_set(messages_for(k4r2, 2)),
            (std::set<MessageId>{msg(1, {1, 3}, 2), msg(3, {1, 3}, 2), msg(1, {1, 4}, 2), msg(4, {1, 4}, 2),
                                 msg(3, {3, 4}, 2), msg(4, {3, 4}, 2)}));
  EXPECT_EQ(as_set(messages_for(k4r2, 3)),
            (std::set<MessageId>{msg(1, {1, 2}, 3), msg(2, {1, 2}, 3), msg(1, {1, 4}, 3), msg(4, {1, 4}, 3),
                                 msg(2, {2, 4}, 3), msg(4, {2, 4}, 3)}));
  EXPECT_EQ(as_set(messages_for(k4r2, 4)),
            (std::set<MessageId>{msg(1, {1, 2}, 4), msg(2, {1, 2}, 4), msg(1, {1, 3}, 4), msg(3, {1, 3}, 4),
                                 msg(2, {2, 3}, 4), msg(3, {2, 3}, 4)}));
  EXPECT_EQ(generate_messages(k4r2).size(), 22u);
}

TEST(GenerateMessages, SmallestCase) {
  const auto p = SystemParams::with_integer_load(3, 1);
  EXPECT_EQ(messages_for(p, 1), (std::vector<MessageId>{msg(2, {2}, 1)}));
  EXPECT_EQ(messages_for(p, 2).size(), 2u);
  EXPECT_EQ(messages_for(p, 3).size(), 2u);
  EXPECT_EQ(generate_messages(p).size(), 5u);
}

TEST(GenerateMessages, CountsAndCanonicalOrder) {
  for (int K = 3; K <= 9; ++K) {
    for (int r = 1; r <= K - 2; ++r) {
      const auto p = SystemParams::with_integer_load(K, r);
      const auto all = generate_messages(p);
      EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
      EXPECT_EQ(BigInt(messages_for(p, 1).size()), BigInt(K - 2) * binomial(K - 2, r - 1));
      EXPECT_EQ(BigInt(messages_for(p, 1).size()), r * binomial(K - 1, r) - binomial(K - 2, r - 1));
      for (int j = 2; j <= K; ++j) EXPECT_EQ(BigInt(messages_for(p, j).size()), r * binomial(K - 1, r));
      for (const auto& m : messages_for(p, 1)) EXPECT_NE(m.sender, K);
    }
  }
  EXPECT_THROW(generate_messages(SystemParams::with_integer_load(4, 3)), ParameterError);
}

TEST(AssignPrecoders, WorkedExampleLists) {
  const auto a = assign_precoders(k4r2);
  ASSERT_EQ(a.lists().size(), 3u);
  EXPECT_EQ(as_set(a.codewords({2, 3})),
            (std::set<MessageId>{msg(1, {1, 3}, 2), msg(1, {1, 2}, 3), msg(4, {3, 4}, 2), msg(4, {2, 4}, 3),
                                 msg(2, {2, 3}, 1), msg(3, {2, 3}, 1), msg(3, {1, 3}, 2), msg(2, {1, 2}, 3)}));
  EXPECT_EQ(as_set(a.codewords({2, 4})),
            (std::set<MessageId>{msg(1, {1, 4}, 2), msg(1, {1, 2}, 4), msg(3, {3, 4}, 2), msg(3, {2, 3}, 4),
                                 msg(2, {2, 4}, 1), msg(2, {1, 2}, 4), msg(4, {1, 4}, 2)}));
  EXPECT_EQ(as_set(a.codewords({3, 4})),
            (std::set<MessageId>{msg(1, {1, 4}, 3), msg(1, {1, 3}, 4), msg(2, {2, 4}, 3), msg(2, {2, 3}, 4),
                                 msg(3, {3, 4}, 1), msg(4, {1, 4}, 3), msg(3, {1, 3}, 4)}));
  EXPECT_EQ(a.total_codewords(), 22u);
}

TEST(AssignPrecoders, WorkedExampleTable) {
  // (team, destination) -> precoders, one row of the table per team.
  std::map<std::pair<NodeSet, int>, std::set<NodeSet>> table;
  const auto a = assign_precoders(k4r2);
  for (const auto& [R, list] : a.lists()) {
    for (const auto& m : list) table[{m.team, m.dest}].insert(R);
  }
  const std::map<std::pair<NodeSet, int>, std::set<NodeSet>> expected{
      {{{1, 2}, 3}, {{2, 3}}},         {{{1, 2}, 4}, {{2, 4}}},         {{{1, 3}, 2}, {{2, 3}}},
      {{{1, 3}, 4}, {{3, 4}}},         {{{1, 4}, 2}, {{2, 4}}},         {{{1, 4}, 3}, {{3, 4}}},
      {{{2, 3}, 1}, {{2, 3}}},         {{{2, 3}, 4}, {{2, 4}, {3, 4}}}, {{{2, 4}, 1}, {{2, 4}}},
      {{{2, 4}, 3}, {{2, 3}, {3, 4}}}, {{{3, 4}, 1}, {{3, 4}}},         {{{3, 4}, 2}, {{2, 3}, {2, 4}}},
  };
  EXPECT_EQ(table, expected);
}

TEST(AssignPrecoders, FiveNodeLoadThreePattern) {
  const auto a = assign_precoders(SystemParams::with_integer_load(5, 3));
  std::set<std::pair<NodeSet, int>> pattern;
  for (const auto& m : a.codewords({2, 3, 4})) pattern.insert({m.team, m.dest});
  const std::set<std::pair<NodeSet, int>> expected{
      {{1, 2, 3}, 4}, {{1, 2, 4}, 3}, {{1, 3, 4}, 2}, {{2, 3, 4}, 1},
      {{2, 3, 5}, 4}, {{2, 4, 5}, 3}, {{3, 4, 5}, 2},
  };
  EXPECT_EQ(pattern, expected);
}

TEST(AssignPrecoders, PartitionSafetyAndShapeRules) {
  for (int K = 3; K <= 8; ++K) {
    for (int r = 1; r <= K - 2; ++r) {
      const auto p = SystemParams::with_integer_load(K, r);
      const auto a = assign_precoders(p);
      std::set<MessageId> seen;
      std::size_t total = 0;
      for (const auto& [R, list] : a.lists()) {
        EXPECT_FALSE(R.contains(1));
        EXPECT_EQ(static_cast<int>(R.size()), r);
        for (const auto& m : list) {
          seen.insert(m);
          ++total;
          // Every node of R wants the codeword or can compute it.
          for (int i : R) EXPECT_TRUE(i == m.dest || m.team.contains(i)) << m.label() << " on " << R.to_string();
          if (m.dest == 1) {
            EXPECT_EQ(m.team, R);
            EXPECT_NE(m.sender, K);
          } else {
            const bool outside = R.contains(m.dest) && !R.contains(m.sender) && m.team == R.with(m.sender).without(m.dest);
            const bool inside = R.contains(m.dest) && R.contains(m.sender) && m.team == R.with(1).without(m.dest);
            EXPECT_TRUE(outside || inside) << m.label();
          }
        }
      }
      EXPECT_EQ(total, seen.size());
      EXPECT_EQ(seen, as_set(generate_messages(p)));
    }
  }
}

TEST(ChannelSet, Examples) {
  EXPECT_EQ(channel_set_h(k4r2, {2, 3}), (std::vector<ChannelPair>{{1, 4}, {4, 1}, {4, 2}, {4, 3}}));
  EXPECT_EQ(channel_set_h(k4r2, {3, 4}), (std::vector<ChannelPair>{{1, 2}, {2, 1}, {2, 3}, {2, 4}}));
  EXPECT_EQ(channel_set_h(k4r2, {2, 4}), (std::vector<ChannelPair>{{1, 3}, {3, 1}, {3, 2}, {3, 4}}));
  EXPECT_THROW(channel_set_h(k4r2, {1, 2}), ParameterError);
  EXPECT_THROW(channel_set_h(k4r2, {2}), ParameterError);
  for (int K = 3; K <= 8; ++K) {
    for (int r = 1; r <= K - 2; ++r) {
      const auto p = SystemParams::with_integer_load(K, r);
      for (const auto& R : precoder_sets(p)) EXPECT_EQ(static_cast<int>(channel_set_h(p, R).size()), K * (K - r - 1));
    }
  }
}

TEST(DimensionAudit, WorkedExample) {
  const auto a = dimension_audit(k4r2, 1);
  EXPECT_EQ(a.gamma, 4);
  EXPECT_EQ(a.block_length, 52);
  EXPECT_EQ(a.nodes[0].signal_columns, 4);
  EXPECT_EQ(a.nodes[0].interference_columns, 48);
  EXPECT_EQ(a.nodes[0].dof, Rational(4, 52));
  EXPECT_EQ(a.nodes[0].dof_limit, Rational(4, 7));
  for (int j = 1; j < 4; ++j) {
    EXPECT_EQ(a.nodes[j].signal_columns, 6);
    EXPECT_EQ(a.nodes[j].interference_columns, 16);
    EXPECT_EQ(a.nodes[j].dof, Rational(6, 52));
    EXPECT_EQ(a.nodes[j].dof_limit, Rational(6, 7));
  }
  EXPECT_EQ(a.sum_dof_limit, Rational(22, 7));
  EXPECT_EQ(a.sum_dof, Rational(22, 52));
  EXPECT_THROW(dimension_audit(k4r2, 0), ParameterError);
}

TEST(DimensionAudit, NodeOneFillsBlockLength) {
  for (int K = 3; K <= 8; ++K) {
    for (int r = 1; r <= K - 2; ++r) {
      const auto p = SystemParams::with_integer_load(K, r);
      for (int eta : {1, 2}) {
        const auto a = dimension_audit(p, eta);
        const BigInt T = BigInt(K - 2) * binomial(K - 2, r - 1) * power(BigInt(eta), a.gamma) +
                         binomial(K - 1, r) * power(BigInt(eta + 1), a.gamma);
        EXPECT_EQ(a.block_length, T);
        EXPECT_EQ(a.nodes[0].signal_columns + a.nodes[0].interference_columns, T);
        for (const auto& n : a.nodes) EXPECT_LE(n.signal_columns + n.interference_columns, T);
        EXPECT_EQ(a.sum_dof_limit, sum_dof_closed_form(p));
      }
    }
  }
}

TEST(DimensionAudit, FiniteEtaApproachesLimitMonotonically) {
  for (int K = 3; K <= 6; ++K) {
    for (int r = 1; r <= K - 2; ++r) {
      const auto p = SystemParams::with_integer_load(K, r);
      const auto s1 = dimension_audit(p, 1).sum_dof;
      const auto s2 = dimension_audit(p, 2).sum_dof;
      const auto s3 = dimension_audit(p, 3).sum_dof;
      EXPECT_LT(s1, s2);
      EXPECT_LT(s2, s3);
      EXPECT_LT(s3, sum_dof_closed_form(p));
    }
  }
}

TEST(SumDof, Examples) {
  EXPECT_EQ(sum_dof_closed_form(k4r2), Rational(22, 7));
  EXPECT_EQ(sum_dof_closed_form(SystemParams::with_integer_load(3, 1)), Rational(5, 3));
  EXPECT_EQ(sum_dof_closed_form(SystemParams::with_integer_load(11, 2)), Rational(109, 14));
  EXPECT_THROW(sum_dof_closed_form(SystemParams::with_integer_load(5, 4)), ParameterError);
}

TEST(SumDof, ClosedFormEqualsCombinatorialRatio) {
  for (int K = 3; K <= 14; ++K) {
    for (int r = 1; r <= K - 2; ++r) {
      const auto p = SystemParams::with_integer_load(K, r);
      const BigInt a = BigInt(K - 2) * binomial(K - 2, r - 1);
      const Rational ratio(a + BigInt(K - 1) * r * binomial(K - 1, r), a + binomial(K - 1, r));
      EXPECT_EQ(sum_dof_combinatorial(p), ratio);
      EXPECT_EQ(sum_dof_closed_form(p), ratio);
    }
  }
}

TEST(EncodingTerms, WorkedExampleNodeFour) {
  std::set<std::pair<NodeSet, MessageId>> got;
  for (const auto& t : encoding_terms(k4r2, 4)) got.insert({t.precoder, t.message});
  const std::set<std::pair<NodeSet, MessageId>> expected{
      {{2, 3}, msg(4, {3, 4}, 2)}, {{2, 3}, msg(4, {2, 4}, 3)}, {{2, 4}, msg(4, {1, 4}, 2)}, {{3, 4}, msg(4, {1, 4}, 3)}};
  EXPECT_EQ(got, expected);
}

TEST(EncodingTerms, AgreeWithAssignmentAndCoverEveryCodeword) {
  for (int K = 3; K <= 7; ++K) {
    for (int r = 1; r <= K - 2; ++r) {
      const auto p = SystemParams::with_integer_load(K, r);
      const auto a = assign_precoders(p);
      std::multiset<MessageId> sent;
      for (int k = 1; k <= K; ++k) {
        for (const auto& t : encoding_terms(p, k)) {
          EXPECT_EQ(t.message.sender, k);
          EXPECT_EQ(a.precoder_of(t.message), t.precoder) << t.message.label();
          sent.insert(t.message);
        }
      }
      const auto all = generate_messages(p);
      EXPECT_EQ(sent, std::multiset<MessageId>(all.begin(), all.end()));
    }
  }
}

TEST(CleanedSignal, WorkedExampleNodeTwoDesired) {
  std::set<std::tuple<ChannelPair, NodeSet, MessageId>> desired;
  for (const auto& t : cleaned_signal_terms(k4r2, 2)) {
    if (t.desired) desired.insert({t.channel, t.precoder, t.message});
  }
  const std::set<std::tuple<ChannelPair, NodeSet, MessageId>> expected{
      {{2, 1}, {2, 3}, msg(1, {1, 3}, 2)}, {{2, 1}, {2, 4}, msg(1, {1, 4}, 2)},
      {{2, 3}, {2, 3}, msg(3, {1, 3}, 2)}, {{2, 3}, {2, 4}, msg(3, {3, 4}, 2)},
      {{2, 4}, {2, 3}, msg(4, {3, 4}, 2)}, {{2, 4}, {2, 4}, msg(4, {1, 4}, 2)}};
  EXPECT_EQ(desired, expected);
}

TEST(CleanedSignal, SurvivorsDesiredSetAndAlignmentChannels) {
  for (int K = 3; K <= 6; ++K) {
    for (int r = 1; r <= K - 2; ++r) {
      const auto p = SystemParams::with_integer_load(K, r);
      const auto a = assign_precoders(p);
      const auto all = generate_messages(p);
      for (int j = 1; j <= K; ++j) {
        std::set<MessageId> survivors;
        std::set<MessageId> desired;
        for (const auto& t : cleaned_signal_terms(p, j)) {
          EXPECT_TRUE(survivors.insert(t.message).second) << "duplicate " << t.message.label();
          EXPECT_EQ(t.channel, (ChannelPair{j, t.message.sender}));
          EXPECT_EQ(t.precoder, a.precoder_of(t.message));
          EXPECT_EQ(t.desired, t.message.dest == j);
          if (t.desired) {
            desired.insert(t.message);
          } else {
            const auto hs = channel_set_h(p, t.precoder);
            EXPECT_NE(std::find(hs.begin(), hs.end(), t.channel), hs.end())
                << "K=" << K << " r=" << r << " j=" << j << " " << t.message.label();
          }
        }
        std::set<MessageId> expected;
        for (const auto& m : all) {
          if (!m.team.contains(j) && m.sender != j) expected.insert(m);
        }
        EXPECT_EQ(survivors, expected) << "K=" << K << " r=" << r << " j=" << j;
        EXPECT_EQ(desired, as_set(messages_for(p, j)));
      }
    }
  }
}
