#pragma once

#include <variant>
#include <vector>

#include "bqmod/biquandle.hpp"
#include "bqmod/mgd.hpp"

namespace bqmod {

// Oriented crossing with its four semiarcs. With both strands pointing up,
// the two semiarcs on the left (p on the under strand, q on the over strand)
// determine the two on the right: r = p ▷̲ q and w = q ▷̄ p. For a positive
// crossing the left pair is (under_in, over_out); for a negative one it is
// (under_out, over_in). A kink joins p to q, which is where x ▷̲ x = x ▷̄ x
// enters.
struct CrossingRelation {
  Label under_in, over_in, under_out, over_out;
  int sign;
  // (p, q, r, w).
  std::array<Label, 4> determining() const {
    return sign > 0 ? std::array{under_in, over_out, under_out, over_in}
                    : std::array{under_out, over_in, under_in, over_out};
  }
};
// All four semiarcs carry the same element.
struct SaddleRelation {
  Label a, b, c, d;
};
using Relation = std::variant<CrossingRelation, SaddleRelation>;
using RelationSet = std::vector<Relation>;

RelationSet relations(const MarkedGraphDiagram& d);

// Elements of X per semiarc, aligned with d.labels().
using Coloring = std::vector<int>;

// All colorings in lexicographic order of (color of the smallest label, ...).
// threads <= 0 uses the hardware concurrency.
std::vector<Coloring> enumerate_colorings(const MarkedGraphDiagram& d, const Biquandle& x, int threads = 1);
Count counting_invariant(const MarkedGraphDiagram& d, const Biquandle& x, int threads = 1);

bool is_coloring(const MarkedGraphDiagram& d, const Biquandle& x, const Coloring& f);

// Tries all |X|^m assignments; throws TooLarge beyond 10^7.
std::vector<Coloring> brute_force_colorings(const MarkedGraphDiagram& d, const Biquandle& x);

}  // namespace bqmod
