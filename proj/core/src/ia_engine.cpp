#include "wmr/ia_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "wmr/errors.hpp"

namespace wmr {

namespace detail {

template <class T>
struct InstanceData {
  std::map<ChannelPair, std::vector<T>> channels;
  std::map<NodeSet, std::vector<T>> xi;
  std::map<NodeSet, std::vector<ChannelPair>> h_sets;
  std::map<NodeSet, DenseMatrix<T>> u;
  std::map<NodeSet, DenseMatrix<T>> w;
};

struct InstanceBody {
  explicit InstanceBody(PrecoderAssignment a) : assignment(std::move(a)) {}

  std::uint64_t modulus = 0;
  std::size_t block_length = 0;
  std::size_t u_width = 0;
  std::size_t w_width = 0;
  PrecoderAssignment assignment;
  std::variant<InstanceData<Residue>, InstanceData<Complex>> data;
};

}  // namespace detail

namespace {

using detail::InstanceData;
using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using EigenVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

constexpr const char* kModularDistribution = "uniform nonzero residues mod p";
constexpr const char* kFloatingDistribution = "unit-modulus complex, uniform phase";

struct ModOps {
  PrimeField field;

  Residue add(Residue a, Residue b) const { return field.add(a, b); }
  Residue sub(Residue a, Residue b) const { return field.sub(a, b); }
  Residue mul(Residue a, Residue b) const { return field.mul(a, b); }
};

struct FloatOps {
  Complex add(Complex a, Complex b) const { return a + b; }
  Complex sub(Complex a, Complex b) const { return a - b; }
  Complex mul(Complex a, Complex b) const { return a * b; }
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  Residue nonzero_residue(std::uint64_t p) {
    return std::uniform_int_distribution<std::uint64_t>(1, p - 1)(rng_);
  }
  Residue residue(std::uint64_t p) { return std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng_); }
  Complex unit_phase() {
    return std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng_));
  }
  Complex gaussian(double stddev) {
    std::normal_distribution<double> d(0.0, stddev / std::sqrt(2.0));
    const double re = d(rng_);
    return {re, d(rng_)};
  }

 private:
  std::mt19937_64 rng_;
};

template <class T>
T draw_entry(Sampler& s, std::uint64_t p) {
  if constexpr (std::is_same_v<T, Residue>) {
    return s.nonzero_residue(p);
  } else {
    (void)p;
    return s.unit_phase();
  }
}

template <class T>
std::vector<T> draw_vector(Sampler& s, std::uint64_t p, std::size_t n) {
  std::vector<T> out(n);
  for (auto& v : out) v = draw_entry<T>(s, p);
  return out;
}

// Columns prod_{H in hs} H^alpha_H * xi for every alpha in [limit]^|hs|,
// odometer order with the first channel most significant.
template <class T, class Ops>
DenseMatrix<T> power_product_matrix(const Ops& ops, const std::vector<const std::vector<T>*>& hs,
                                    const std::vector<T>& xi, int limit, std::size_t width) {
  const std::size_t rows = xi.size();
  const std::size_t g = hs.size();
  DenseMatrix<T> out(rows, width);
  // powers[h][e][t] = H_h(t)^e for e in [0, limit]
  std::vector<std::vector<std::vector<T>>> powers(g);
  for (std::size_t h = 0; h < g; ++h) {
    powers[h].resize(static_cast<std::size_t>(limit) + 1);
    powers[h][0].assign(rows, T(1));
    for (int e = 1; e <= limit; ++e) {
      powers[h][e].resize(rows);
      for (std::size_t t = 0; t < rows; ++t) powers[h][e][t] = ops.mul(powers[h][e - 1][t], (*hs[h])[t]);
    }
  }
  std::vector<int> alpha(g, 1);
  for (std::size_t col = 0; col < width; ++col) {
    for (std::size_t t = 0; t < rows; ++t) {
      T v = xi[t];
      for (std::size_t h = 0; h < g; ++h) v = ops.mul(v, powers[h][alpha[h]][t]);
      out(t, col) = v;
    }
    for (std::size_t h = g; h-- > 0;) {
      if (alpha[h] < limit) {
        ++alpha[h];
        break;
      }
      alpha[h] = 1;
    }
  }
  return out;
}

template <class T, class Ops>
InstanceData<T> materialize(const Ops& ops, const SystemParams& params, int eta, Sampler& sampler,
                            std::uint64_t p, std::size_t block_length, std::size_t u_width,
                            std::size_t w_width) {
  InstanceData<T> data;
  const int K = params.K();
  for (NodeIndex j = 1; j <= K; ++j) {
    for (NodeIndex k = 1; k <= K; ++k) {
      if (j != k) data.channels[{j, k}] = draw_vector<T>(sampler, p, block_length);
    }
  }
  for (const auto& R : precoder_sets(params)) {
    data.xi[R] = draw_vector<T>(sampler, p, block_length);
  }
  for (const auto& [R, xi] : data.xi) {
    auto hs = channel_set_h(params, R);
    std::vector<const std::vector<T>*> ptrs;
    for (const auto& pair : hs) ptrs.push_back(&data.channels.at(pair));
    data.u[R] = power_product_matrix<T>(ops, ptrs, xi, eta, u_width);
    data.w[R] = power_product_matrix<T>(ops, ptrs, xi, eta + 1, w_width);
    data.h_sets[R] = std::move(hs);
  }
  return data;
}

template <class T>
std::vector<T> times_diag(const std::vector<T>& diag, const DenseMatrix<T>& m, std::size_t col,
                          const auto& ops) {
  std::vector<T> out(m.rows);
  for (std::size_t t = 0; t < m.rows; ++t) out[t] = ops.mul(diag[t], m(t, col));
  return out;
}

template <class T, class Ops>
DenseMatrix<T> lambda_values(const Ops& ops, const AlignmentInstance& inst, const InstanceData<T>& data,
                             NodeIndex j, std::size_t& signal_columns) {
  const auto& body = inst.body();
  const auto desired = messages_for(inst.params(), j);
  std::vector<NodeSet> interference;
  for (const auto& [R, unused] : data.w) {
    if (!R.contains(j)) interference.push_back(R);
  }
  signal_columns = desired.size() * body.u_width;
  const std::size_t cols = signal_columns + interference.size() * body.w_width;
  DenseMatrix<T> out(body.block_length, cols);
  std::size_t c = 0;
  for (const auto& m : desired) {
    const auto& h = data.channels.at({j, m.sender});
    const auto& u = data.u.at(body.assignment.precoder_of(m));
    for (std::size_t col = 0; col < u.cols; ++col, ++c) {
      for (std::size_t t = 0; t < u.rows; ++t) out(t, c) = ops.mul(h[t], u(t, col));
    }
  }
  for (const auto& R : interference) {
    const auto& w = data.w.at(R);
    for (std::size_t col = 0; col < w.cols; ++col, ++c) {
      for (std::size_t t = 0; t < w.rows; ++t) out(t, c) = w(t, col);
    }
  }
  return out;
}

Eigen::Map<const EigenMatrix> as_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EigenMatrix>(m.data.data(), static_cast<Eigen::Index>(m.rows),
                                       static_cast<Eigen::Index>(m.cols));
}

std::string structural_note(std::size_t rows, std::size_t cols) {
  return "structural: " + std::to_string(cols) + " columns exceed " + std::to_string(rows) + " rows";
}

ModOps mod_ops(const AlignmentInstance& inst) { return ModOps{PrimeField(inst.modulus())}; }

}  // namespace

std::string to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::modular ? "modular" : "float";
}

ArithmeticMode parse_mode(const std::string& text) {
  if (text == "modular") return ArithmeticMode::modular;
  if (text == "float" || text == "floating") return ArithmeticMode::floating;
  throw ParameterError("unknown arithmetic mode '" + text + "' (expected modular or float)");
}

AlignmentInstance::AlignmentInstance(SystemParams params, int eta, std::uint64_t seed, ArithmeticMode mode,
                                     std::shared_ptr<const detail::InstanceBody> body)
    : params_(std::move(params)), eta_(eta), seed_(seed), mode_(mode), body_(std::move(body)) {}

std::size_t AlignmentInstance::block_length() const { return body_->block_length; }
std::uint64_t AlignmentInstance::modulus() const { return body_->modulus; }
std::string AlignmentInstance::distribution() const {
  return mode_ == ArithmeticMode::modular ? kModularDistribution : kFloatingDistribution;
}
const PrecoderAssignment& AlignmentInstance::assignment() const { return body_->assignment; }
std::size_t AlignmentInstance::precoder_width() const { return body_->u_width; }
std::size_t AlignmentInstance::span_width() const { return body_->w_width; }

AlignmentInstance sample_instance(const SystemParams& params, int eta, std::uint64_t seed,
                                  ArithmeticMode mode, const InstanceOptions& options) {
  if (eta < 1) throw ParameterError("eta must be at least 1, got " + std::to_string(eta));
  auto assignment = assign_precoders(params);
  const unsigned gamma = static_cast<unsigned>(params.gamma());
  const BigInt T = params.block_length(eta);
  const BigInt u_width = power(BigInt(eta), gamma);
  const BigInt w_width = power(BigInt(eta + 1), gamma);
  if (T > options.max_block_length) {
    throw ResourceError("block length T=" + T.str() + " exceeds the limit " +
                        std::to_string(options.max_block_length) + " (eta^Gamma=" + u_width.str() +
                        ", (eta+1)^Gamma=" + w_width.str() + ", Gamma=" + std::to_string(gamma) + ")");
  }

  auto body = std::make_shared<detail::InstanceBody>(std::move(assignment));
  body->block_length = static_cast<std::size_t>(T);
  body->u_width = static_cast<std::size_t>(u_width);
  body->w_width = static_cast<std::size_t>(w_width);

  Sampler sampler(seed);
  if (mode == ArithmeticMode::modular) {
    body->modulus = random_prime(sampler.rng());
    ModOps ops{PrimeField(body->modulus)};
    body->data = materialize<Residue>(ops, params, eta, sampler, body->modulus, body->block_length,
                                      body->u_width, body->w_width);
  } else {
    body->data = materialize<Complex>(FloatOps{}, params, eta, sampler, 0, body->block_length, body->u_width,
                                      body->w_width);
  }
  return AlignmentInstance(params, eta, seed, mode, std::move(body));
}

std::size_t LambdaMatrix::rows() const {
  return std::visit([](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ModularMatrix>) {
      return m.values.rows;
    } else {
      return m.rows;
    }
  }, matrix);
}

std::size_t LambdaMatrix::cols() const {
  return std::visit([](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ModularMatrix>) {
      return m.values.cols;
    } else {
      return m.cols;
    }
  }, matrix);
}

LambdaMatrix build_lambda(const AlignmentInstance& inst, NodeIndex node) {
  if (node < 1 || node > inst.params().K()) {
    throw ParameterError("node " + std::to_string(node) + " outside [1, " + std::to_string(inst.params().K()) + "]");
  }
  LambdaMatrix out;
  out.node = node;
  out.label = "Lambda_" + std::to_string(node);
  const auto& body = inst.body();
  if (inst.mode() == ArithmeticMode::modular) {
    const auto& data = std::get<InstanceData<Residue>>(body.data);
    out.matrix = ModularMatrix{inst.modulus(), lambda_values(mod_ops(inst), inst, data, node, out.signal_columns)};
  } else {
    const auto& data = std::get<InstanceData<Complex>>(body.data);
    out.matrix = lambda_values(FloatOps{}, inst, data, node, out.signal_columns);
  }
  return out;
}

RankCertificate certify_rank(const ModularMatrix& matrix, const std::string& label) {
  RankCertificate cert;
  cert.label = label;
  cert.rows = matrix.values.rows;
  cert.cols = matrix.values.cols;
  cert.mode = ArithmeticMode::modular;
  cert.modulus = matrix.modulus;
  cert.rank = modular_rank(matrix);
  cert.pass = cert.rank == cert.cols;
  if (cert.rows < cert.cols) cert.note = structural_note(cert.rows, cert.cols);
  return cert;
}

RankCertificate certify_rank(const ComplexMatrix& matrix, double tolerance, const std::string& label) {
  RankCertificate cert;
  cert.label = label;
  cert.rows = matrix.rows;
  cert.cols = matrix.cols;
  cert.mode = ArithmeticMode::floating;
  cert.tolerance = tolerance;
  if (matrix.rows == 0 || matrix.cols == 0) {
    cert.pass = matrix.cols == 0;
    return cert;
  }
  Eigen::BDCSVD<EigenMatrix> svd(as_eigen(matrix));
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (smax > 0.0 && sv(i) > tolerance * smax) ++cert.rank;
  }
  cert.sigma_max = smax;
  // With more columns than rows the missing singular values are zero.
  cert.sigma_min = matrix.rows < matrix.cols ? 0.0 : sv(sv.size() - 1);
  cert.pass = cert.rank == cert.cols;
  if (cert.rows < cert.cols) cert.note = structural_note(cert.rows, cert.cols);
  return cert;
}

RankCertificate certify_rank(const LambdaMatrix& lambda, double tolerance) {
  return std::visit([&](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ModularMatrix>) {
      return certify_rank(m, lambda.label);
    } else {
      return certify_rank(m, tolerance, lambda.label);
    }
  }, lambda.matrix);
}

ContainmentReport check_alignment(const AlignmentInstance& inst, const NodeSet& precoder, double tolerance) {
  ContainmentReport report;
  report.precoder = precoder;
  const auto hs = channel_set_h(inst.params(), precoder);

  auto collect = [&](const auto& ops, const auto& data) {
    using T = std::decay_t<decltype(data.u.at(precoder).data[0])>;
    const auto& u = data.u.at(precoder);
    std::vector<std::vector<T>> targets;
    for (std::size_t c = 0; c < u.cols; ++c) {
      std::vector<T> col(u.rows);
      for (std::size_t t = 0; t < u.rows; ++t) col[t] = u(t, c);
      targets.push_back(col);
      for (const auto& pair : hs) targets.push_back(times_diag(data.channels.at(pair), u, c, ops));
    }
    return targets;
  };

  if (inst.mode() == ArithmeticMode::modular) {
    const auto& data = std::get<InstanceData<Residue>>(inst.body().data);
    const auto targets = collect(mod_ops(inst), data);
    const auto& w = data.w.at(precoder);
    ModularMatrix base{inst.modulus(), w};
    ModularMatrix augmented{inst.modulus(), DenseMatrix<Residue>(w.rows, w.cols + targets.size())};
    std::copy(w.data.begin(), w.data.end(), augmented.values.data.begin());
    for (std::size_t i = 0; i < targets.size(); ++i) {
      std::copy(targets[i].begin(), targets[i].end(), augmented.values.data.begin() + (w.cols + i) * w.rows);
    }
    report.checked_columns = targets.size();
    report.contained = modular_rank(base) == modular_rank(augmented);
    report.max_relative_residual = report.contained ? 0.0 : 1.0;
  } else {
    const auto& data = std::get<InstanceData<Complex>>(inst.body().data);
    const auto targets = collect(FloatOps{}, data);
    const auto& w = data.w.at(precoder);
    Eigen::ColPivHouseholderQR<EigenMatrix> qr(as_eigen(w));
    report.checked_columns = targets.size();
    for (const auto& target : targets) {
      Eigen::Map<const EigenVector> v(target.data(), static_cast<Eigen::Index>(target.size()));
      const EigenVector x = qr.solve(v);
      const double norm = v.norm();
      const double residual = (as_eigen(w) * x - v).norm() / (norm > 0.0 ? norm : 1.0);
      report.max_relative_residual = std::max(report.max_relative_residual, residual);
    }
    report.contained = report.max_relative_residual <= tolerance;
  }
  return report;
}

double RoundTripReport::max_relative_error() const {
  double worst = 0.0;
  for (const auto& n : nodes) worst = std::max(worst, n.relative_error);
  return worst;
}

namespace {

template <class T, class Ops>
RoundTripReport roundtrip_impl(const Ops& ops, const AlignmentInstance& inst, const InstanceData<T>& data,
                               const RoundTripOptions& options) {
  constexpr bool exact = std::is_same_v<T, Residue>;
  const auto& params = inst.params();
  const auto& assignment = inst.assignment();
  const std::size_t T_len = inst.block_length();
  const std::size_t width = inst.precoder_width();
  const int K = params.K();

  RoundTripReport report;
  report.mode = inst.mode();
  report.distribution = inst.distribution();

  std::vector<LambdaMatrix> lambdas;
  std::vector<RankCertificate> certs;
  for (NodeIndex j = 1; j <= K; ++j) {
    lambdas.push_back(build_lambda(inst, j));
    certs.push_back(certify_rank(lambdas.back(), options.tolerance));
    if (!certs.back().pass) {
      report.refused = certs.back();
      return report;
    }
  }

  Sampler sampler(options.symbol_seed);
  std::map<MessageId, std::vector<T>> symbols;
  for (const auto& m : generate_messages(params)) {
    std::vector<T> block(width, T(0));
    if (!options.zero_symbols) {
      for (auto& s : block) {
        if constexpr (exact) {
          s = sampler.residue(inst.modulus());
        } else {
          s = sampler.gaussian(1.0);
        }
      }
    }
    symbols.emplace(m, std::move(block));
  }
  report.codewords = symbols.size();

  // U_R b for every codeword.
  std::map<MessageId, std::vector<T>> precoded;
  for (const auto& [m, b] : symbols) {
    const auto& u = data.u.at(assignment.precoder_of(m));
    std::vector<T> v(T_len, T(0));
    for (std::size_t c = 0; c < u.cols; ++c) {
      for (std::size_t t = 0; t < T_len; ++t) v[t] = ops.add(v[t], ops.mul(u(t, c), b[c]));
    }
    precoded.emplace(m, std::move(v));
  }

  std::vector<std::vector<T>> x(K + 1, std::vector<T>(T_len, T(0)));
  std::size_t encoded = 0;
  for (NodeIndex k = 1; k <= K; ++k) {
    for (const auto& term : encoding_terms(params, k)) {
      if (assignment.precoder_of(term.message) != term.precoder) {
        throw std::logic_error("encoding uses a different precoder for " + term.message.label());
      }
      const auto& v = precoded.at(term.message);
      for (std::size_t t = 0; t < T_len; ++t) x[k][t] = ops.add(x[k][t], v[t]);
      ++encoded;
    }
  }
  if (encoded != symbols.size()) {
    throw std::logic_error("encoding sums do not cover every codeword exactly once");
  }

  for (NodeIndex j = 1; j <= K; ++j) {
    std::vector<T> y(T_len, T(0));
    for (NodeIndex k = 1; k <= K; ++k) {
      if (k == j) continue;
      const auto& h = data.channels.at({j, k});
      for (std::size_t t = 0; t < T_len; ++t) y[t] = ops.add(y[t], ops.mul(h[t], x[k][t]));
    }
    if constexpr (!exact) {
      if (options.noise_std > 0.0) {
        for (auto& v : y) v += sampler.gaussian(options.noise_std);
      }
    }
    for (const auto& [m, v] : precoded) {
      // Own transmissions never reach Y_j.
      if (!m.team.contains(j) || m.sender == j) continue;
      const auto& h = data.channels.at({j, m.sender});
      for (std::size_t t = 0; t < T_len; ++t) y[t] = ops.sub(y[t], ops.mul(h[t], v[t]));
    }

    const auto desired = messages_for(params, j);
    NodeRecovery rec;
    rec.node = j;
    rec.codewords = desired.size();
    rec.certificate = certs[j - 1];
    std::vector<T> solution;
    if constexpr (exact) {
      auto solved = modular_solve(std::get<ModularMatrix>(lambdas[j - 1].matrix), y);
      if (!solved) throw std::logic_error("certified system has no solution");
      solution = std::move(*solved);
    } else {
      const auto& lam = std::get<ComplexMatrix>(lambdas[j - 1].matrix);
      Eigen::ColPivHouseholderQR<EigenMatrix> qr(as_eigen(lam));
      Eigen::Map<const EigenVector> rhs(y.data(), static_cast<Eigen::Index>(y.size()));
      const EigenVector sol = qr.solve(rhs);
      solution.assign(sol.data(), sol.data() + sol.size());
      if (rec.certificate.sigma_min && *rec.certificate.sigma_min > 0.0) {
        rec.condition_number = *rec.certificate.sigma_max / *rec.certificate.sigma_min;
      }
    }

    double max_err = 0.0;
    double max_true = 0.0;
    std::size_t idx = 0;
    for (const auto& m : desired) {
      const auto& truth = symbols.at(m);
      for (std::size_t c = 0; c < width; ++c, ++idx) {
        if constexpr (exact) {
          if (solution[idx] != truth[c]) ++rec.mismatched_entries;
        } else {
          max_err = std::max(max_err, std::abs(solution[idx] - truth[c]));
          max_true = std::max(max_true, std::abs(truth[c]));
        }
      }
    }
    if constexpr (exact) {
      rec.relative_error = idx == 0 ? 0.0 : static_cast<double>(rec.mismatched_entries) / idx;
      rec.max_abs_error = rec.mismatched_entries > 0 ? 1.0 : 0.0;
    } else {
      rec.max_abs_error = max_err;
      rec.relative_error = max_true > 0.0 ? max_err / max_true : max_err;
    }
    report.nodes.push_back(std::move(rec));
  }
  report.decoded = true;
  return report;
}

void validate_exponents(const std::vector<std::vector<int>>& exponents) {
  if (exponents.empty()) throw ParameterError("at least one exponent vector is required");
  const std::size_t d = exponents.front().size();
  if (d == 0) throw ParameterError("exponent vectors must be nonempty");
  for (const auto& e : exponents) {
    if (e.size() != d) throw ParameterError("exponent vectors must share one length");
    for (int v : e) {
      if (v < 0) throw ParameterError("exponents must be nonnegative");
    }
  }
  auto sorted = exponents;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParameterError("exponent vectors must be pairwise distinct");
  }
}

template <class T, class Ops>
T power_of(const Ops& ops, T base, int e) {
  T out(1);
  for (int i = 0; i < e; ++i) out = ops.mul(out, base);
  return out;
}

template <class T, class Ops>
DenseMatrix<T> vandermonde_values(const Ops& ops, Sampler& s, std::uint64_t p, std::size_t m,
                                  const std::vector<std::vector<int>>& exponents) {
  const std::size_t d = exponents.front().size();
  DenseMatrix<T> base(m, d);
  for (auto& v : base.data) v = draw_entry<T>(s, p);
  DenseMatrix<T> out(m, exponents.size());
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      T v(1);
      for (std::size_t k = 0; k < d; ++k) v = ops.mul(v, power_of(ops, base(i, k), exponents[j][k]));
      out(i, j) = v;
    }
  }
  return out;
}

template <class T, class Ops>
DenseMatrix<T> blockdiag_values(const Ops& ops, Sampler& s, std::uint64_t p,
                                const std::vector<std::size_t>& block_columns, std::size_t mu, bool shared) {
  std::size_t total = 0;
  for (auto n : block_columns) total += n;
  DenseMatrix<T> out(mu, total);
  std::vector<T> g;
  std::vector<T> xi;
  std::size_t c = 0;
  for (std::size_t i = 0; i < block_columns.size(); ++i) {
    if (i == 0 || !shared) {
      g = draw_vector<T>(s, p, mu);
      xi = draw_vector<T>(s, p, mu);
    }
    // B_{i,l} = diag(g^l): distinct exponents make the stacked diagonals a
    // Vandermonde matrix.
    for (std::size_t l = 1; l <= block_columns[i]; ++l, ++c) {
      for (std::size_t t = 0; t < mu; ++t) {
        out(t, c) = ops.mul(power_of(ops, g[t], static_cast<int>(l)), xi[t]);
      }
    }
  }
  return out;
}

template <class Build>
RankCertificate certify_built(ArithmeticMode mode, std::uint64_t seed, double tolerance, const std::string& label,
                              Build&& build) {
  Sampler sampler(seed);
  if (mode == ArithmeticMode::modular) {
    const std::uint64_t p = random_prime(sampler.rng());
    ModOps ops{PrimeField(p)};
    return certify_rank(ModularMatrix{p, build.template operator()<Residue>(ops, sampler, p)}, label);
  }
  return certify_rank(build.template operator()<Complex>(FloatOps{}, sampler, 0), tolerance, label);
}

}  // namespace

RoundTripReport shuffle_roundtrip(const AlignmentInstance& inst, const RoundTripOptions& options) {
  if (inst.mode() == ArithmeticMode::modular) {
    if (options.noise_std > 0.0) throw ParameterError("additive noise is only available in float mode");
    return roundtrip_impl(mod_ops(inst), inst, std::get<InstanceData<Residue>>(inst.body().data), options);
  }
  return roundtrip_impl(FloatOps{}, inst, std::get<InstanceData<Complex>>(inst.body().data), options);
}

RankCertificate lemma_vandermonde_test(std::size_t m, const std::vector<std::vector<int>>& exponents,
                                       std::uint64_t seed, ArithmeticMode mode, double tolerance) {
  if (m == 0) throw ParameterError("row count m must be positive");
  validate_exponents(exponents);
  auto build = [&]<class T>(const auto& ops, Sampler& s, std::uint64_t p) {
    return vandermonde_values<T>(ops, s, p, m, exponents);
  };
  auto cert = certify_built(mode, seed, tolerance, "vandermonde", build);
  if (exponents.size() > m) cert.pass = false;
  return cert;
}

RankCertificate lemma_blockdiag_test(const std::vector<std::size_t>& block_columns, std::size_t mu,
                                     std::uint64_t seed, ArithmeticMode mode, bool shared, double tolerance) {
  if (block_columns.empty() || mu == 0) throw ParameterError("need at least one block and mu >= 1");
  for (auto n : block_columns) {
    if (n == 0) throw ParameterError("every block needs at least one column");
  }
  auto build = [&]<class T>(const auto& ops, Sampler& s, std::uint64_t p) {
    return blockdiag_values<T>(ops, s, p, block_columns, mu, shared);
  };
  return certify_built(mode, seed, tolerance, "blockdiag", build);
}

void write_dense_text(std::ostream& out, const AnyMatrix& matrix) {
  std::visit([&](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ModularMatrix>) {
      out << m.values.rows << ' ' << m.values.cols << " modular " << m.modulus << '\n';
      for (std::size_t i = 0; i < m.values.rows; ++i) {
        for (std::size_t j = 0; j < m.values.cols; ++j) out << (j ? " " : "") << m.values(i, j);
        out << '\n';
      }
    } else {
      out << m.rows << ' ' << m.cols << " complex\n";
      std::ostringstream cell;
      cell.precision(17);
      for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
          cell.str("");
          cell << m(i, j).real() << ',' << m(i, j).imag();
          out << (j ? " " : "") << cell.str();
        }
        out << '\n';
      }
    }
  }, matrix);
}

}  // namespace wmr
