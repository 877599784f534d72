#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "bqmod/error.hpp"

namespace bqmod {

using Residue = std::int64_t;
using Count = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using IntMatrix = DenseMatrix<std::int64_t>;

class Modulus {
 public:
  explicit Modulus(std::int64_t n);

  std::int64_t value() const noexcept { return n_; }
  bool is_prime() const noexcept { return prime_; }
  Residue reduce(std::int64_t a) const noexcept {
    Residue r = a % n_;
    return r < 0 ? r + n_ : r;
  }
  bool is_unit(Residue a) const noexcept;

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.n_ == b.n_; }

 private:
  std::int64_t n_;
  bool prime_;
};

bool is_prime(std::int64_t n) noexcept;

// Multiplicative inverse in Z_n. Throws NotAUnit.
Residue invert(Residue a, const Modulus& n);

// a^e for counting; throws TooLarge on 64-bit overflow.
Count checked_pow(Count base, long exponent);
Count checked_mul(Count a, Count b);

// Dense matrix over Z_n whose entries are kept in [0, n).
class ModMatrix {
 public:
  ModMatrix(const Modulus& n, Eigen::Index rows, Eigen::Index cols);
  ModMatrix(const Modulus& n, const IntMatrix& entries);

  const Modulus& modulus() const noexcept { return n_; }
  Eigen::Index rows() const noexcept { return a_.rows(); }
  Eigen::Index cols() const noexcept { return a_.cols(); }
  Residue operator()(Eigen::Index i, Eigen::Index j) const { return a_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, std::int64_t v) { a_(i, j) = n_.reduce(v); }
  void add(Eigen::Index i, Eigen::Index j, std::int64_t v) { a_(i, j) = n_.reduce(a_(i, j) + v); }
  const IntMatrix& entries() const noexcept { return a_; }

  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.n_ == b.n_ && a.a_.rows() == b.a_.rows() && a.a_.cols() == b.a_.cols() && a.a_ == b.a_;
  }

 private:
  Modulus n_;
  IntMatrix a_;
};

struct RowReduction {
  ModMatrix reduced;
  Eigen::Index rank;
  std::vector<Eigen::Index> pivots;
};

// Reduced row echelon form over a prime field. Throws CompositeModulus.
RowReduction row_reduce(const ModMatrix& m);

// Number of solutions of m v = 0 over Z_n. Prime n uses the rank; composite n
// uses the elementary divisors of the integer lift.
Count null_count(const ModMatrix& m);

// Nonzero elementary divisors d_1 | d_2 | ... of an integer matrix, all positive.
template <class Scalar>
std::vector<Scalar> smith_normal_form(DenseMatrix<Scalar> a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index r = 0;
  auto magnitude = [](const Scalar& v) { return v < 0 ? Scalar(-v) : v; };

  // Moves the smallest nonzero entry of the trailing block to (r, r).
  auto place_min = [&](Eigen::Index from) {
    Eigen::Index bi = -1, bj = -1;
    Scalar best = 0;
    for (Eigen::Index i = from; i < rows; ++i)
      for (Eigen::Index j = from; j < cols; ++j)
        if (a(i, j) != 0 && (bi < 0 || magnitude(a(i, j)) < best)) {
          best = magnitude(a(i, j));
          bi = i;
          bj = j;
        }
    if (bi < 0) return false;
    if (bi != from) a.row(bi).swap(a.row(from));
    if (bj != from) a.col(bj).swap(a.col(from));
    return true;
  };

  while (r < rows && r < cols && place_min(r)) {
    for (;;) {
      bool clean = true;
      for (Eigen::Index i = r + 1; i < rows; ++i) {
        if (a(i, r) == 0) continue;
        Scalar q = a(i, r) / a(r, r);
        for (Eigen::Index j = r; j < cols; ++j) a(i, j) -= q * a(r, j);
        if (a(i, r) != 0) clean = false;
      }
      for (Eigen::Index j = r + 1; j < cols; ++j) {
        if (a(r, j) == 0) continue;
        Scalar q = a(r, j) / a(r, r);
        for (Eigen::Index i = r; i < rows; ++i) a(i, j) -= q * a(i, r);
        if (a(r, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot is left in row or column r.
        Eigen::Index bi = r, bj = r;
        for (Eigen::Index i = r + 1; i < rows; ++i)
          if (a(i, r) != 0 && magnitude(a(i, r)) < magnitude(a(bi, bj))) bi = i, bj = r;
        for (Eigen::Index j = r + 1; j < cols; ++j)
          if (a(r, j) != 0 && magnitude(a(r, j)) < magnitude(a(bi, bj))) bi = r, bj = j;
        if (bi != r) a.row(bi).swap(a.row(r));
        if (bj != r) a.col(bj).swap(a.col(r));
        continue;
      }
      Eigen::Index bad = -1;
      for (Eigen::Index i = r + 1; i < rows && bad < 0; ++i)
        for (Eigen::Index j = r + 1; j < cols; ++j)
          if (a(i, j) % a(r, r) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      a.row(r) += a.row(bad);
    }
    ++r;
  }

  std::vector<Scalar> divisors;
  divisors.reserve(static_cast<std::size_t>(r));
  for (Eigen::Index i = 0; i < r; ++i) divisors.push_back(magnitude(a(i, i)));
  return divisors;
}

std::vector<BigInt> smith_normal_form(const IntMatrix& m);

}  // namespace bqmod
