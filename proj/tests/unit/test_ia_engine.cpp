#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "wmr/errors.hpp"
#include "wmr/ia_engine.hpp"

using namespace wmr;

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t pw(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t out = 1;
  for (; e > 0; e >>= 1, a = static_cast<std::uint64_t>(u128(a) * a % p)) {
    if (e & 1) out = static_cast<std::uint64_t>(u128(out) * a % p);
  }
  return out;
}

// Row reduction on a copy, kept separate from the library routine.
std::size_t oracle_rank(const ModularMatrix& m) {
  const std::uint64_t p = m.modulus;
  std::vector<std::vector<std::uint64_t>> a(m.values.rows, std::vector<std::uint64_t>(m.values.cols));
  for (std::size_t i = 0; i < m.values.rows; ++i) {
    for (std::size_t j = 0; j < m.values.cols; ++j) a[i][j] = m.values(i, j) % p;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.values.cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = pw(a[rank][c], p - 2, p);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      const std::uint64_t f = static_cast<std::uint64_t>(u128(a[i][c]) * inv % p);
      for (std::size_t j = c; j < a[i].size(); ++j) {
        a[i][j] = (a[i][j] + p - static_cast<std::uint64_t>(u128(f) * a[rank][j] % p)) % p;
      }
    }
    ++rank;
  }
  return rank;
}

const SystemParams k4r2 = SystemParams::with_integer_load(4, 2);

}  // namespace

TEST(PrimeField, PrimalityAndArithmetic) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(2305843009213693951ULL));  // 2^61 - 1
  EXPECT_FALSE(is_prime(2305843009213693953ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5; ++i) {
    const auto p = random_prime(rng);
    EXPECT_GE(p, 1ULL << 61);
    EXPECT_LT(p, 1ULL << 62);
    EXPECT_TRUE(is_prime(p));
    PrimeField f(p);
    const Residue a = p - 12345;
    EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_EQ(f.pow(a, p - 1), 1u);
    EXPECT_EQ(f.add(a, f.sub(0, a)), 0u);
  }
  EXPECT_THROW(PrimeField(101).inv(0), std::domain_error);
}

TEST(PrimeField, SolveAndRank) {
  ModularMatrix m{101, DenseMatrix<Residue>(3, 2)};
  m.values(0, 0) = 1, m.values(0, 1) = 2;
  m.values(1, 0) = 3, m.values(1, 1) = 4;
  m.values(2, 0) = 5, m.values(2, 1) = 6;
  EXPECT_EQ(modular_rank(m), 2u);
  // x = (7, 9): b = (25, 57, 89).
  const auto x = modular_solve(m, {25, 57, 89});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, (std::vector<Residue>{7, 9}));
  EXPECT_FALSE(modular_solve(m, {25, 57, 90}).has_value());
  m.values(0, 1) = 2, m.values(1, 1) = 6, m.values(2, 1) = 10;
  EXPECT_EQ(modular_rank(m), 1u);
  EXPECT_FALSE(modular_solve(m, {2, 6, 10}).has_value());
}

TEST(Certificates, ExactRankDeficiencies) {
  ModularMatrix zero{101, DenseMatrix<Residue>(3, 3)};
  auto c = certify_rank(zero, "zero");
  EXPECT_EQ(c.rank, 0u);
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.modulus, 101u);

  ModularMatrix dup{101, DenseMatrix<Residue>(4, 3)};
  for (std::size_t i = 0; i < 4; ++i) {
    dup.values(i, 0) = i + 1;
    dup.values(i, 1) = (i + 1) * (i + 1);
    dup.values(i, 2) = i + 1;
  }
  c = certify_rank(dup);
  EXPECT_EQ(c.rank, 2u);
  EXPECT_FALSE(c.pass);

  ModularMatrix wide{101, DenseMatrix<Residue>(2, 3)};
  wide.values(0, 0) = wide.values(1, 1) = 1;
  c = certify_rank(wide);
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.note.rfind("structural:", 0), 0u);
}

TEST(Certificates, FloatingRankUsesRelativeThreshold) {
  ComplexMatrix m(3, 2);
  m(0, 0) = 1.0, m(1, 1) = 1.0;
  auto c = certify_rank(m);
  EXPECT_TRUE(c.pass);
  EXPECT_NEAR(*c.sigma_min, 1.0, 1e-12);
  m(1, 1) = 1e-12;
  c = certify_rank(m);
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.rank, 1u);
  c = certify_rank(m, 1e-14);
  EXPECT_TRUE(c.pass);
}

TEST(Instance, DimensionsFollowBlockLength) {
  const auto inst = sample_instance(k4r2, 1, 3, ArithmeticMode::modular);
  EXPECT_EQ(inst.block_length(), 52u);
  EXPECT_EQ(inst.precoder_width(), 1u);
  EXPECT_EQ(inst.span_width(), 16u);
  EXPECT_TRUE(is_prime(inst.modulus()));
  const auto l1 = build_lambda(inst, 1);
  EXPECT_EQ(l1.rows(), 52u);
  EXPECT_EQ(l1.cols(), 52u);
  EXPECT_EQ(l1.signal_columns, 4u);
  const auto l2 = build_lambda(inst, 2);
  EXPECT_EQ(l2.rows(), 52u);
  EXPECT_EQ(l2.cols(), 22u);
  EXPECT_EQ(l2.signal_columns, 6u);
  EXPECT_EQ(build_lambda(sample_instance(SystemParams::with_integer_load(3, 1), 1, 1, ArithmeticMode::floating), 1).cols(),
            17u);
  EXPECT_EQ(sample_instance(k4r2, 2, 1, ArithmeticMode::floating).block_length(), 307u);
}

TEST(Instance, DeterministicInSeed) {
  std::ostringstream a, b, c;
  write_dense_text(a, build_lambda(sample_instance(k4r2, 1, 11, ArithmeticMode::modular), 2).matrix);
  write_dense_text(b, build_lambda(sample_instance(k4r2, 1, 11, ArithmeticMode::modular), 2).matrix);
  write_dense_text(c, build_lambda(sample_instance(k4r2, 1, 12, ArithmeticMode::modular), 2).matrix);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(Instance, FloatingEntriesHaveUnitModulus) {
  const auto inst = sample_instance(k4r2, 2, 5, ArithmeticMode::floating);
  for (int j = 1; j <= 4; ++j) {
    const auto l = build_lambda(inst, j);
    const auto& m = std::get<ComplexMatrix>(l.matrix);
    for (const auto& v : m.data) EXPECT_NEAR(std::abs(v), 1.0, 1e-9);
  }
}

TEST(Instance, ResourceGuard) {
  EXPECT_THROW(sample_instance(SystemParams::with_integer_load(5, 1), 1, 1, ArithmeticMode::modular), ResourceError);
  EXPECT_THROW(sample_instance(k4r2, 1, 1, ArithmeticMode::modular, InstanceOptions{51}), ResourceError);
  EXPECT_NO_THROW(sample_instance(k4r2, 1, 1, ArithmeticMode::modular, InstanceOptions{52}));
  try {
    sample_instance(SystemParams::with_integer_load(5, 1), 1, 1, ArithmeticMode::modular);
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("131075"), std::string::npos) << e.what();
  }
  EXPECT_THROW(sample_instance(k4r2, 0, 1, ArithmeticMode::modular), ParameterError);
}

TEST(Rank, LambdaFullColumnRankAcrossSeeds) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = sample_instance(k4r2, 1, seed, ArithmeticMode::modular);
    for (int j = 1; j <= 4; ++j) {
      const auto l = build_lambda(inst, j);
      const auto cert = certify_rank(l);
      EXPECT_TRUE(cert.pass) << "seed " << seed << " node " << j;
      EXPECT_EQ(cert.rank, oracle_rank(std::get<ModularMatrix>(l.matrix)));
    }
  }
}

TEST(Rank, OtherShapes) {
  for (auto [K, r, eta] : {std::tuple{3, 1, 1}, std::tuple{3, 1, 2}, std::tuple{4, 1, 1}, std::tuple{4, 2, 2}}) {
    const auto p = SystemParams::with_integer_load(K, r);
    for (auto mode : {ArithmeticMode::modular, ArithmeticMode::floating}) {
      const auto inst = sample_instance(p, eta, 2, mode);
      for (int j = 1; j <= K; ++j) {
        EXPECT_TRUE(certify_rank(build_lambda(inst, j)).pass) << K << " " << r << " " << eta << " node " << j;
      }
    }
  }
}

TEST(Rank, DuplicatedColumnDropsRank) {
  const auto l = build_lambda(sample_instance(k4r2, 1, 4, ArithmeticMode::modular), 1);
  auto m = std::get<ModularMatrix>(l.matrix);
  for (std::size_t i = 0; i < m.values.rows; ++i) m.values(i, 1) = m.values(i, 0);
  EXPECT_EQ(certify_rank(m).rank, 51u);
  EXPECT_EQ(oracle_rank(m), 51u);
}

TEST(Alignment, ContainmentInBothModes) {
  for (auto mode : {ArithmeticMode::modular, ArithmeticMode::floating}) {
    for (auto [K, r, eta] : {std::tuple{4, 2, 1}, std::tuple{4, 2, 2}, std::tuple{3, 1, 2}}) {
      const auto p = SystemParams::with_integer_load(K, r);
      const auto inst = sample_instance(p, eta, 9, mode);
      for (const auto& R : precoder_sets(p)) {
        const auto rep = check_alignment(inst, R);
        EXPECT_TRUE(rep.contained) << to_string(mode) << " K=" << K << " R=" << R.to_string();
        EXPECT_EQ(rep.checked_columns, inst.precoder_width() * (1 + channel_set_h(p, R).size()));
        EXPECT_LT(rep.max_relative_residual, 1e-8);
      }
    }
  }
}

TEST(RoundTrip, ModularIsExact) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rep = shuffle_roundtrip(sample_instance(k4r2, 1, seed, ArithmeticMode::modular), {seed + 100});
    ASSERT_TRUE(rep.decoded);
    EXPECT_EQ(rep.codewords, 22u);
    for (const auto& n : rep.nodes) EXPECT_EQ(n.mismatched_entries, 0u);
    EXPECT_EQ(rep.max_relative_error(), 0.0);
  }
}

TEST(RoundTrip, FloatingRecoversSymbols) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rep = shuffle_roundtrip(sample_instance(k4r2, 1, seed, ArithmeticMode::floating), {seed});
    ASSERT_TRUE(rep.decoded);
    EXPECT_LT(rep.max_relative_error(), 1e-6);
    std::size_t total = 0;
    for (const auto& n : rep.nodes) {
      total += n.codewords;
      ASSERT_TRUE(n.condition_number.has_value());
      EXPECT_GE(*n.condition_number, 1.0);
    }
    EXPECT_EQ(total, 22u);
    EXPECT_EQ(rep.nodes.at(0).codewords, 4u);
  }
}

TEST(RoundTrip, SmallestSystemAndZeroSymbols) {
  const auto inst = sample_instance(SystemParams::with_integer_load(3, 1), 2, 1, ArithmeticMode::floating);
  auto rep = shuffle_roundtrip(inst);
  ASSERT_TRUE(rep.decoded);
  EXPECT_EQ(rep.codewords, 5u);
  RoundTripOptions zero;
  zero.zero_symbols = true;
  rep = shuffle_roundtrip(inst, zero);
  ASSERT_TRUE(rep.decoded);
  for (const auto& n : rep.nodes) EXPECT_EQ(n.max_abs_error, 0.0);
}

TEST(RoundTrip, NoiseAndRefusal) {
  const auto fl = sample_instance(k4r2, 1, 1, ArithmeticMode::floating);
  RoundTripOptions noisy;
  noisy.noise_std = 1e-3;
  const auto rep = shuffle_roundtrip(fl, noisy);
  ASSERT_TRUE(rep.decoded);
  EXPECT_GT(rep.max_relative_error(), 0.0);
  EXPECT_THROW(shuffle_roundtrip(sample_instance(k4r2, 1, 1, ArithmeticMode::modular), noisy), ParameterError);
  RoundTripOptions strict;
  strict.tolerance = 0.99;
  const auto refused = shuffle_roundtrip(fl, strict);
  EXPECT_FALSE(refused.decoded);
  ASSERT_TRUE(refused.refused.has_value());
  EXPECT_FALSE(refused.refused->pass);
}

TEST(Lemmas, VandermondeProducts) {
  const std::vector<std::vector<int>> ex{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  for (auto mode : {ArithmeticMode::modular, ArithmeticMode::floating}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      EXPECT_TRUE(lemma_vandermonde_test(4, ex, seed, mode).pass);
      EXPECT_TRUE(lemma_vandermonde_test(6, ex, seed, mode).pass);
      EXPECT_TRUE(lemma_vandermonde_test(1, {{3, 0}}, seed, mode).pass);
    }
    const auto over = lemma_vandermonde_test(3, ex, 1, mode);
    EXPECT_FALSE(over.pass);
    EXPECT_EQ(over.rank, 3u);
  }
  EXPECT_THROW(lemma_vandermonde_test(4, {{1, 2}, {1, 2}}, 1, ArithmeticMode::modular), ParameterError);
  EXPECT_THROW(lemma_vandermonde_test(4, {{1, 2}, {1}}, 1, ArithmeticMode::modular), ParameterError);
  EXPECT_THROW(lemma_vandermonde_test(4, {{-1, 2}}, 1, ArithmeticMode::modular), ParameterError);
  EXPECT_THROW(lemma_vandermonde_test(0, {{1}}, 1, ArithmeticMode::modular), ParameterError);
}

TEST(Lemmas, BlockDiagonalStack) {
  for (auto mode : {ArithmeticMode::modular, ArithmeticMode::floating}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      EXPECT_TRUE(lemma_blockdiag_test({2, 2}, 4, seed, mode).pass);
      EXPECT_TRUE(lemma_blockdiag_test({1, 2, 3}, 6, seed, mode).pass);
      const auto shared = lemma_blockdiag_test({2, 2}, 4, seed, mode, true);
      EXPECT_FALSE(shared.pass);
      EXPECT_EQ(shared.rank, 2u);
    }
    EXPECT_FALSE(lemma_blockdiag_test({3, 3}, 5, 1, mode).pass);
  }
  EXPECT_THROW(lemma_blockdiag_test({}, 4, 1, ArithmeticMode::modular), ParameterError);
  EXPECT_THROW(lemma_blockdiag_test({2, 0}, 4, 1, ArithmeticMode::modular), ParameterError);
}

TEST(DenseText, HeaderAndEntries) {
  ModularMatrix m{101, DenseMatrix<Residue>(2, 2)};
  m.values(0, 0) = 1, m.values(0, 1) = 2, m.values(1, 0) = 3, m.values(1, 1) = 100;
  std::ostringstream out;
  write_dense_text(out, m);
  EXPECT_EQ(out.str(), "2 2 modular 101\n1 2\n3 100\n");
  ComplexMatrix c(1, 2);
  c(0, 0) = {1.5, -2.0};
  c(0, 1) = {0.0, 0.25};
  out.str("");
  write_dense_text(out, c);
  EXPECT_EQ(out.str(), "1 2 complex\n1.5,-2 0,0.25\n");
}

TEST(Mode, Parsing) {
  EXPECT_EQ(parse_mode("modular"), ArithmeticMode::modular);
  EXPECT_EQ(parse_mode("float"), ArithmeticMode::floating);
  EXPECT_EQ(parse_mode("floating"), ArithmeticMode::floating);
  EXPECT_THROW(parse_mode("double"), ParameterError);
  EXPECT_EQ(to_string(ArithmeticMode::floating), "float");
}
