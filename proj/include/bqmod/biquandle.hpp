#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bqmod/error.hpp"
#include "bqmod/ring.hpp"

namespace bqmod {

// Operation table with 0-indexed entries; table(x, y) is the product of x by y.
using Table = DenseMatrix<int>;

class Biquandle {
 public:
  int size() const noexcept { return static_cast<int>(under_.rows()); }
  // x under-operated by y, and x over-operated by y.
  int under(int x, int y) const { return under_(x, y); }
  int over(int x, int y) const { return over_(x, y); }
  const Table& under_table() const noexcept { return under_; }
  const Table& over_table() const noexcept { return over_; }

  friend bool operator==(const Biquandle& a, const Biquandle& b) {
    return a.under_ == b.under_ && a.over_ == b.over_;
  }

 private:
  friend Checked<Biquandle> verify_biquandle(const Table&, const Table&);
  Biquandle(Table under, Table over) : under_(std::move(under)), over_(std::move(over)) {}
  Table under_;
  Table over_;
};

// Checks every axiom instance; tables are 0-indexed. Throws MalformedTable
// when the tables are not square, differ in size, or hold out-of-range entries.
Checked<Biquandle> verify_biquandle(const Table& under, const Table& over);

// Same as verify_biquandle, for tables written with 1-indexed entries.
Checked<Biquandle> verify_biquandle_1(const Table& under, const Table& over);

// Z_n with x under y = t x + (s - t) y and x over y = s x.
Biquandle alexander_biquandle(const Modulus& n, Residue t, Residue s);

// Both operations send x to sigma(x); sigma is given by its 1-indexed images.
Biquandle constant_action_biquandle(std::span<const int> sigma);

struct BiquandleTables {
  Table under;
  Table over;
};

// Reads the text format into 0-indexed tables without checking axioms.
BiquandleTables parse_biquandle_tables(std::string_view text);
// Reads and verifies; throws ParseError or AxiomViolation.
Biquandle parse_biquandle(std::string_view text);
std::string render_biquandle(const Biquandle& x);

// Stable short hash of the tables, used to identify inputs in reports.
std::string fingerprint(const Biquandle& x);

}  // namespace bqmod
