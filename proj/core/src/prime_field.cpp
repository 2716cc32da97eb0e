#include "wmr/prime_field.hpp"

#include <stdexcept>
#include <utility>

namespace wmr {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

// Row-major working copy for elimination.
struct Rows {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Residue> a;

  Residue& at(std::size_t i, std::size_t j) { return a[i * m + j]; }
};

// Reduces to row echelon form in place; returns pivot columns.
std::vector<std::size_t> eliminate(Rows& w, const PrimeField& f, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < w.n; ++col) {
    std::size_t sel = row;
    while (sel < w.n && w.at(sel, col) == 0) ++sel;
    if (sel == w.n) continue;
    if (sel != row) {
      for (std::size_t j = 0; j < w.m; ++j) std::swap(w.at(sel, j), w.at(row, j));
    }
    const Residue inv = f.inv(w.at(row, col));
    for (std::size_t j = col; j < w.m; ++j) w.at(row, j) = f.mul(w.at(row, j), inv);
    for (std::size_t i = 0; i < w.n; ++i) {
      if (i == row) continue;
      const Residue factor = w.at(i, col);
      if (factor == 0) continue;
      for (std::size_t j = col; j < w.m; ++j) {
        w.at(i, j) = f.sub(w.at(i, j), f.mul(factor, w.at(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Rows to_rows(const ModularMatrix& matrix, std::size_t extra) {
  Rows w;
  w.n = matrix.values.rows;
  w.m = matrix.values.cols + extra;
  w.a.assign(w.n * w.m, 0);
  for (std::size_t i = 0; i < w.n; ++i) {
    for (std::size_t j = 0; j < matrix.values.cols; ++j) {
      w.at(i, j) = matrix.values(i, j) % matrix.modulus;
    }
  }
  return w;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(1ULL << 61, (1ULL << 62) - 1);
  while (true) {
    const std::uint64_t candidate = dist(rng) | 1ULL;
    if (is_prime(candidate)) return candidate;
  }
}

PrimeField::PrimeField(std::uint64_t modulus) : p_(modulus) {
  if (modulus < 2 || modulus >= (1ULL << 63)) {
    throw std::invalid_argument("modulus must lie in [2, 2^63)");
  }
}

Residue PrimeField::add(Residue a, Residue b) const {
  const Residue s = a + b;
  return s >= p_ ? s - p_ : s;
}

Residue PrimeField::sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }

Residue PrimeField::mul(Residue a, Residue b) const { return mulmod(a, b, p_); }

Residue PrimeField::pow(Residue a, std::uint64_t e) const { return powmod(a, e, p_); }

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw std::domain_error("zero has no inverse");
  return powmod(a, p_ - 2, p_);
}

std::size_t modular_rank(const ModularMatrix& matrix) {
  PrimeField f(matrix.modulus);
  Rows w = to_rows(matrix, 0);
  return eliminate(w, f, w.m).size();
}

std::optional<std::vector<Residue>> modular_solve(const ModularMatrix& matrix,
                                                  const std::vector<Residue>& rhs) {
  const std::size_t n = matrix.values.rows;
  const std::size_t m = matrix.values.cols;
  if (rhs.size() != n) throw std::invalid_argument("right-hand side length differs from row count");
  PrimeField f(matrix.modulus);
  Rows w = to_rows(matrix, 1);
  for (std::size_t i = 0; i < n; ++i) w.at(i, m) = rhs[i] % matrix.modulus;
  const auto pivots = eliminate(w, f, m);
  if (pivots.size() != m) return std::nullopt;
  for (std::size_t i = m; i < n; ++i) {
    if (w.at(i, m) != 0) return std::nullopt;
  }
  std::vector<Residue> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = w.at(i, m);
  return x;
}

}  // namespace wmr
