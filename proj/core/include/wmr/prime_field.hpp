#pragma once

// Exact linear algebra over Z/pZ for primes below 2^62.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace wmr {

using Residue = std::uint64_t;

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Uniform random prime in [2^61, 2^62).
std::uint64_t random_prime(std::mt19937_64& rng);

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t modulus);

  std::uint64_t modulus() const { return p_; }

  Residue add(Residue a, Residue b) const;
  Residue sub(Residue a, Residue b) const;
  Residue mul(Residue a, Residue b) const;
  Residue pow(Residue a, std::uint64_t e) const;
  /// Throws std::domain_error for zero.
  Residue inv(Residue a) const;

 private:
  std::uint64_t p_;
};

/// Column-major dense matrix.
template <class T>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  T& operator()(std::size_t i, std::size_t j) { return data[j * rows + i]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[j * rows + i]; }
};

struct ModularMatrix {
  std::uint64_t modulus = 0;
  DenseMatrix<Residue> values;
};

/// Rank by Gaussian elimination mod p.
std::size_t modular_rank(const ModularMatrix& matrix);

/// Solves A x = b. Returns nullopt when A lacks full column rank or the
/// system is inconsistent.
std::optional<std::vector<Residue>> modular_solve(const ModularMatrix& matrix,
                                                  const std::vector<Residue>& rhs);

}  // namespace wmr
