#pragma once

// Numerical instances of the alignment scheme: diagonal channels, aligned
// precoders U_R, interference spans W_R, the stacked receive matrices and
// their rank certificates, a noiseless shuffle round trip, and randomized
// checks of the two full-rank lemmas behind decodability.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wmr/core_model.hpp"
#include "wmr/prime_field.hpp"
#include "wmr/scheme.hpp"

namespace wmr {

enum class ArithmeticMode { modular, floating };

std::string to_string(ArithmeticMode mode);
/// Accepts "modular" and "float" (or "floating").
ArithmeticMode parse_mode(const std::string& text);

using Complex = std::complex<double>;
using ComplexMatrix = DenseMatrix<Complex>;

/// Default ceiling on the block length T an instance may materialize.
inline constexpr std::uint64_t kDefaultMaxBlockLength = 20000;

struct InstanceOptions {
  std::uint64_t max_block_length = kDefaultMaxBlockLength;
};

namespace detail {
struct InstanceBody;
}

/// Channels H_{j,k} (diagonal, stored as length-T vectors), one random Xi_R
/// per precoder, and the materialized U_R and W_R. Deterministic in
/// (params, eta, seed, mode).
class AlignmentInstance {
 public:
  AlignmentInstance(SystemParams params, int eta, std::uint64_t seed, ArithmeticMode mode,
                    std::shared_ptr<const detail::InstanceBody> body);

  const SystemParams& params() const { return params_; }
  int eta() const { return eta_; }
  std::uint64_t seed() const { return seed_; }
  ArithmeticMode mode() const { return mode_; }
  std::size_t block_length() const;
  /// Prime modulus in modular mode, 0 otherwise.
  std::uint64_t modulus() const;
  /// Sampling distribution, recorded in every report.
  std::string distribution() const;
  const PrecoderAssignment& assignment() const;

  /// Number of columns in U_R (eta^Gamma) and W_R ((eta+1)^Gamma).
  std::size_t precoder_width() const;
  std::size_t span_width() const;

  const detail::InstanceBody& body() const { return *body_; }

 private:
  SystemParams params_;
  int eta_;
  std::uint64_t seed_;
  ArithmeticMode mode_;
  std::shared_ptr<const detail::InstanceBody> body_;
};

/// Draws channels and Xi vectors and builds all U_R and W_R. Throws
/// ResourceError when T exceeds options.max_block_length.
AlignmentInstance sample_instance(const SystemParams& params, int eta, std::uint64_t seed,
                                  ArithmeticMode mode, const InstanceOptions& options = {});

using AnyMatrix = std::variant<ModularMatrix, ComplexMatrix>;

struct LambdaMatrix {
  std::string label;
  NodeIndex node = 0;
  std::size_t signal_columns = 0;
  AnyMatrix matrix;

  std::size_t rows() const;
  std::size_t cols() const;
};

/// Lambda_j = [D_j, W_R for R not containing j] (all W_R for node 1). D_j
/// stacks H_{j,k} U_R per desired codeword in canonical message order.
LambdaMatrix build_lambda(const AlignmentInstance& inst, NodeIndex node);

inline constexpr double kDefaultTolerance = 1e-8;

struct RankCertificate {
  std::string label;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  ArithmeticMode mode = ArithmeticMode::modular;
  std::optional<double> sigma_min;
  std::optional<double> sigma_max;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> modulus;
  bool pass = false;
  std::string note;
};

/// Exact rank over the prime field.
RankCertificate certify_rank(const ModularMatrix& matrix, const std::string& label = "");
/// Rank as the number of singular values above tolerance * sigma_max.
RankCertificate certify_rank(const ComplexMatrix& matrix, double tolerance = kDefaultTolerance,
                             const std::string& label = "");
RankCertificate certify_rank(const LambdaMatrix& lambda, double tolerance = kDefaultTolerance);

struct ContainmentReport {
  NodeSet precoder;
  std::size_t checked_columns = 0;
  /// Largest least-squares residual relative to the column norm (0 in
  /// modular mode when contained).
  double max_relative_residual = 0.0;
  bool contained = false;
};

/// Checks that every column of U_R and of H U_R for H in H_R lies in the
/// column span of W_R.
ContainmentReport check_alignment(const AlignmentInstance& inst, const NodeSet& precoder,
                                  double tolerance = kDefaultTolerance);

struct RoundTripOptions {
  std::uint64_t symbol_seed = 1;
  /// Standard deviation of additive complex noise; floating mode only.
  double noise_std = 0.0;
  double tolerance = kDefaultTolerance;
  /// Draw all-zero symbols.
  bool zero_symbols = false;
};

struct NodeRecovery {
  NodeIndex node = 0;
  std::size_t codewords = 0;
  double max_abs_error = 0.0;
  double relative_error = 0.0;
  /// Entries that differ from the truth (modular mode).
  std::size_t mismatched_entries = 0;
  std::optional<double> condition_number;
  RankCertificate certificate;
};

struct RoundTripReport {
  ArithmeticMode mode = ArithmeticMode::floating;
  std::string distribution;
  std::size_t codewords = 0;
  bool decoded = false;
  std::vector<NodeRecovery> nodes;
  /// First failed certificate when decoding was refused.
  std::optional<RankCertificate> refused;

  double max_relative_error() const;
};

/// Encodes random symbols through the per-node transmit sums, forms the
/// noiseless receive signals, cleans them with side information and solves
/// Lambda_j x = Y'_j at every node.
RoundTripReport shuffle_roundtrip(const AlignmentInstance& inst, const RoundTripOptions& options = {});

/// m x L matrix with entries prod_k s_{i,k}^{alpha_{j,k}}. Exponent vectors
/// must be pairwise distinct and of equal length.
RankCertificate lemma_vandermonde_test(std::size_t m, const std::vector<std::vector<int>>& exponents,
                                       std::uint64_t seed, ArithmeticMode mode,
                                       double tolerance = kDefaultTolerance);

/// Stacks A_i = [B_{i,1} Xi_i, ..., B_{i,n_i} Xi_i] for diagonal B_{i,l}
/// drawn from the Vandermonde construction. With `shared` every block reuses
/// the first block's matrices and Xi.
RankCertificate lemma_blockdiag_test(const std::vector<std::size_t>& block_columns, std::size_t mu,
                                     std::uint64_t seed, ArithmeticMode mode, bool shared = false,
                                     double tolerance = kDefaultTolerance);

/// Dense text: a header line "rows cols modular <p>" or "rows cols complex",
/// then one row per line. Residues are exact integers; complex entries are
/// written as re,im.
void write_dense_text(std::ostream& out, const AnyMatrix& matrix);

}  // namespace wmr
