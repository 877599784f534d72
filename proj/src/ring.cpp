#include "bqmod/ring.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace bqmod {

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Modulus::Modulus(std::int64_t n) : n_(n), prime_(bqmod::is_prime(n)) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2, got " + std::to_string(n));
  if (n > (std::int64_t{1} << 31)) throw std::invalid_argument("modulus too large: " + std::to_string(n));
}

bool Modulus::is_unit(Residue a) const noexcept { return std::gcd(reduce(a), n_) == 1; }

Residue invert(Residue a, const Modulus& n) {
  std::int64_t r0 = n.value(), r1 = n.reduce(a);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) throw NotAUnit(n.reduce(a), n.value());
  return n.reduce(s0);
}

Count checked_mul(Count a, Count b) {
  if (a != 0 && b > std::numeric_limits<Count>::max() / a) throw TooLarge("count exceeds 64 bits");
  return a * b;
}

Count checked_pow(Count base, long exponent) {
  Count out = 1;
  for (long i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

ModMatrix::ModMatrix(const Modulus& n, Eigen::Index rows, Eigen::Index cols)
    : n_(n), a_(IntMatrix::Zero(rows, cols)) {}

ModMatrix::ModMatrix(const Modulus& n, const IntMatrix& entries)
    : n_(n), a_(entries.unaryExpr([&n](std::int64_t v) { return n.reduce(v); })) {}

RowReduction row_reduce(const ModMatrix& m) {
  const Modulus& n = m.modulus();
  if (!n.is_prime()) throw CompositeModulus(n.value());
  IntMatrix a = m.entries();
  const std::int64_t p = n.value();
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pick = -1;
    for (Eigen::Index i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        pick = i;
        break;
      }
    if (pick < 0) continue;
    if (pick != row) a.row(pick).swap(a.row(row));
    const std::int64_t inv = invert(a(row, col), n);
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * inv % p;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const std::int64_t f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) = n.reduce(a(i, j) - f * a(row, j));
    }
    pivots.push_back(col);
    ++row;
  }
  return RowReduction{ModMatrix(n, a), row, std::move(pivots)};
}

std::vector<BigInt> smith_normal_form(const IntMatrix& m) {
  return smith_normal_form<BigInt>(m.cast<BigInt>());
}

Count null_count(const ModMatrix& m) {
  const Modulus& n = m.modulus();
  const auto base = static_cast<Count>(n.value());
  if (n.is_prime()) return checked_pow(base, static_cast<long>(m.cols() - row_reduce(m).rank));
  const auto divisors = smith_normal_form(m.entries());
  Count out = checked_pow(base, static_cast<long>(m.cols()) - static_cast<long>(divisors.size()));
  for (const BigInt& d : divisors) {
    const auto rem = static_cast<std::int64_t>(d % n.value());
    out = checked_mul(out, static_cast<Count>(std::gcd(rem, n.value())));
  }
  return out;
}

}  // namespace bqmod
