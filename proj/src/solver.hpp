#pragma once

#include <array>
#include <utility>
#include <vector>

#include "bqmod/biquandle.hpp"
#include "bqmod/mgd.hpp"

namespace bqmod::detail {

// Backtracking over saddle-merged semiarc classes. Each crossing is a
// constraint on (p, q, r, w); any two of (p, q), (r, w), (q, r), (p, w)
// determine the other two.
class ColoringSolver {
 public:
  ColoringSolver(const MarkedGraphDiagram& d, const Biquandle& x);

  int vars() const noexcept { return vars_; }
  // Variable of every label, aligned with d.labels().
  const std::vector<int>& var_of_label() const noexcept { return var_of_label_; }

  // Calls `emit(values)` for every solution with variable 0 set to `first`.
  template <class F>
  void search_from(int first, F&& emit) const {
    std::vector<int> val(static_cast<std::size_t>(vars_), -1), trail;
    if (assign(0, first, val, trail)) dfs(val, trail, 1, emit);
  }

 private:
  template <class F>
  void dfs(std::vector<int>& val, std::vector<int>& trail, int from, F& emit) const {
    while (from < vars_ && val[from] >= 0) ++from;
    if (from == vars_) {
      emit(val);
      return;
    }
    for (int c = 0; c < n_; ++c) {
      const std::size_t mark = trail.size();
      if (assign(from, c, val, trail)) dfs(val, trail, from + 1, emit);
      undo(val, trail, mark);
    }
  }

  std::size_t at(int a, int b) const { return static_cast<std::size_t>(a * n_ + b); }
  bool set(int v, int c, std::vector<int>& val, std::vector<int>& trail) const;
  bool assign(int v, int c, std::vector<int>& val, std::vector<int>& trail) const;
  void undo(std::vector<int>& val, std::vector<int>& trail, std::size_t to) const;

  int n_;
  int vars_ = 0;
  std::vector<int> var_of_label_;
  std::vector<std::array<int, 4>> cons_;
  std::vector<std::vector<int>> cons_of_;
  std::vector<int> under_, over_, inv_under_, inv_over_;
  std::vector<std::pair<int, int>> s_inv_;
};

}  // namespace bqmod::detail
