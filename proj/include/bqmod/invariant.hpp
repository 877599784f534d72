#pragma once

#include <map>
#include <string>
#include <vector>

#include "bqmod/coloring.hpp"
#include "bqmod/mgd.hpp"
#include "bqmod/module.hpp"
#include "bqmod/ring.hpp"

namespace bqmod {

// Homogeneous bead relations for one coloring. Columns are saddle-merged
// semiarc classes. Each crossing with semiarcs (p, q, r, w) as in
// CrossingRelation, colors x of p and y of q, gives two rows with the
// determined beads negated:
//   t_{x,y} p + s_{x,y} q - r = 0 and r_{x,y} q - w = 0.
struct BeadSystem {
  ModMatrix matrix;
  std::vector<int> column_of_label;  // aligned with d.labels()
};

BeadSystem bead_system(const MarkedGraphDiagram& d, const Coloring& f, const BiquandleModule& m);
Count bead_count(const MarkedGraphDiagram& d, const Coloring& f, const BiquandleModule& m);
// Direct enumeration of bead assignments; throws TooLarge beyond 10^7.
Count brute_force_bead_count(const MarkedGraphDiagram& d, const Coloring& f, const BiquandleModule& m);

// Multiset of exponents k, one term u^k per coloring.
class InvariantPolynomial {
 public:
  void add(Count exponent, Count multiplicity = 1) { terms_[exponent] += multiplicity; }
  const std::map<Count, Count>& terms() const noexcept { return terms_; }
  Count total() const;
  friend bool operator==(const InvariantPolynomial&, const InvariantPolynomial&) = default;

 private:
  std::map<Count, Count> terms_;
};

// "2u^5 + 2u^25"; u^1 prints as "u" and u^0 as the bare coefficient.
std::string to_string(const InvariantPolynomial& p);
// Reads the rendered form back; throws ParseError.
InvariantPolynomial parse_polynomial(std::string_view text);

// Throws std::invalid_argument when x is not the module's biquandle.
InvariantPolynomial module_polynomial(const MarkedGraphDiagram& d, const Biquandle& x, const BiquandleModule& m,
                                      int threads = 1);

struct InvariantReport {
  std::string diagram;
  std::string biquandle;  // fingerprint
  std::string module;     // fingerprint
  Count counting;
  InvariantPolynomial polynomial;
};

InvariantReport invariant_report(const std::string& name, const MarkedGraphDiagram& d, const BiquandleModule& m,
                                 int threads = 1);
// {"diagram", "biquandle", "module", "counting", "polynomial": [[k, mult], ...]}
std::string to_json(const InvariantReport& r);

}  // namespace bqmod
