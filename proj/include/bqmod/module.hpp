#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bqmod/biquandle.hpp"
#include "bqmod/ring.hpp"

namespace bqmod {

// Matrices t, s, r over Z_n indexed by pairs of biquandle elements:
// row x, column y holds t_{x,y} (0-indexed internally).
class BiquandleModule {
 public:
  const Biquandle& base() const noexcept { return base_; }
  const Modulus& modulus() const noexcept { return n_; }
  const IntMatrix& t() const noexcept { return t_; }
  const IntMatrix& s() const noexcept { return s_; }
  const IntMatrix& r() const noexcept { return r_; }
  Residue t(int x, int y) const { return t_(x, y); }
  Residue s(int x, int y) const { return s_(x, y); }
  Residue r(int x, int y) const { return r_(x, y); }

  friend bool operator==(const BiquandleModule& a, const BiquandleModule& b) {
    return a.base_ == b.base_ && a.n_ == b.n_ && a.t_ == b.t_ && a.s_ == b.s_ && a.r_ == b.r_;
  }

 private:
  friend Checked<BiquandleModule> verify_module(const Biquandle&, const Modulus&, const IntMatrix&, const IntMatrix&,
                                                const IntMatrix&);
  BiquandleModule(Biquandle x, Modulus n, IntMatrix t, IntMatrix s, IntMatrix r)
      : base_(std::move(x)), n_(n), t_(std::move(t)), s_(std::move(s)), r_(std::move(r)) {}
  Biquandle base_;
  Modulus n_;
  IntMatrix t_, s_, r_;
};

// One evaluated axiom instance; both sides reduced mod n.
struct AxiomInstance {
  std::string axiom;       // "i.i", "iii.i", ..., "iii.vi"
  std::vector<int> witness;  // 1-indexed (x) or (x, y, z)
  Residue lhs;
  Residue rhs;
};

// Every instance of the module axioms, in axiom order then witness order.
std::vector<AxiomInstance> module_axiom_instances(const Biquandle& x, const Modulus& n, const IntMatrix& t,
                                                  const IntMatrix& s, const IntMatrix& r);

// Reports at most 100 violations. Throws DimensionMismatch for wrong sizes,
// std::invalid_argument for entries outside [0, n), and NotAUnit when an
// entry of t or r is not invertible.
Checked<BiquandleModule> verify_module(const Biquandle& x, const Modulus& n, const IntMatrix& t, const IntMatrix& s,
                                       const IntMatrix& r);

// All modules (or the first `limit`) in lexicographic order of the entries of
// t, then s, then r, each row-major. threads <= 0 uses the hardware concurrency.
std::vector<BiquandleModule> find_modules(const Biquandle& x, const Modulus& n, std::optional<std::size_t> limit = {},
                                          int threads = 1);

struct ModuleMatrices {
  Modulus n;
  IntMatrix t, s, r;
};
// Reads `ring N` and the t, s, r sections without checking axioms.
ModuleMatrices parse_module_matrices(std::string_view text, int size);
// Throws ParseError, NotAUnit, or AxiomViolation.
BiquandleModule parse_module(std::string_view text, const Biquandle& x);
std::string render_module(const BiquandleModule& m);
std::string fingerprint(const BiquandleModule& m);

}  // namespace bqmod
