#include "bqmod/coloring.hpp"

#include <algorithm>
#include <thread>

#include "solver.hpp"
#include "union_find.hpp"

namespace bqmod {

RelationSet relations(const MarkedGraphDiagram& d) {
  RelationSet out;
  for (const Node& n : d.nodes()) {
    const auto& h = n.half_edges;
    switch (n.kind) {
      case NodeKind::positive: out.push_back(CrossingRelation{h[0], h[1], h[2], h[3], +1}); break;
      case NodeKind::negative: out.push_back(CrossingRelation{h[0], h[3], h[2], h[1], -1}); break;
      case NodeKind::marked: out.push_back(SaddleRelation{h[0], h[1], h[2], h[3]}); break;
    }
  }
  return out;
}

namespace detail {

ColoringSolver::ColoringSolver(const MarkedGraphDiagram& d, const Biquandle& x) : n_(x.size()) {
  const auto& labels = d.labels();
  auto index = [&](Label l) {
    return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  UnionFind uf(labels.size());
  const RelationSet rel = relations(d);
  for (const auto& r : rel)
    if (const auto* s = std::get_if<SaddleRelation>(&r)) {
      uf.unite(index(s->a), index(s->b));
      uf.unite(index(s->a), index(s->c));
      uf.unite(index(s->a), index(s->d));
    }
  var_of_label_.resize(labels.size());
  std::vector<int> id(labels.size(), -1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t root = uf.find(i);
    if (id[root] < 0) id[root] = vars_++;
    var_of_label_[i] = id[root];
  }
  cons_of_.resize(static_cast<std::size_t>(vars_));
  for (const auto& r : rel)
    if (const auto* c = std::get_if<CrossingRelation>(&r)) {
      const auto det = c->determining();
      std::array<int, 4> v{};
      for (int k = 0; k < 4; ++k) v[k] = var_of_label_[index(det[k])];
      for (int k = 0; k < 4; ++k) cons_of_[v[k]].push_back(static_cast<int>(cons_.size()));
      cons_.push_back(v);
    }

  const auto nn = static_cast<std::size_t>(n_);
  under_.assign(nn * nn, 0);
  over_.assign(nn * nn, 0);
  inv_under_.assign(nn * nn, 0);
  inv_over_.assign(nn * nn, 0);
  s_inv_.assign(nn * nn, {0, 0});
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      under_[at(a, b)] = x.under(a, b);
      over_[at(a, b)] = x.over(a, b);
      inv_under_[at(b, x.under(a, b))] = a;
      inv_over_[at(a, x.over(b, a))] = b;
      s_inv_[at(x.under(a, b), x.over(b, a))] = {a, b};
    }
}

bool ColoringSolver::set(int v, int c, std::vector<int>& val, std::vector<int>& trail) const {
  if (val[v] >= 0) return val[v] == c;
  val[v] = c;
  trail.push_back(v);
  return true;
}

bool ColoringSolver::assign(int v, int c, std::vector<int>& val, std::vector<int>& trail) const {
  const std::size_t start = trail.size();
  if (!set(v, c, val, trail)) return false;
  for (std::size_t k = start; k < trail.size(); ++k) {
    for (int ci : cons_of_[trail[k]]) {
      const auto& [p, q, r, w] = cons_[ci];
      for (bool changed = true; changed;) {
        changed = false;
        const std::size_t before = trail.size();
        const int vp = val[p], vq = val[q], vr = val[r], vw = val[w];
        if (vp >= 0 && vq >= 0) {
          if (!set(r, under_[at(vp, vq)], val, trail) || !set(w, over_[at(vq, vp)], val, trail)) return false;
        } else if (vr >= 0 && vw >= 0) {
          const auto [a, b] = s_inv_[at(vr, vw)];
          if (!set(p, a, val, trail) || !set(q, b, val, trail)) return false;
        } else if (vq >= 0 && vr >= 0) {
          if (!set(p, inv_under_[at(vq, vr)], val, trail)) return false;
        } else if (vp >= 0 && vw >= 0) {
          if (!set(q, inv_over_[at(vp, vw)], val, trail)) return false;
        }
        changed = trail.size() != before;
      }
    }
  }
  return true;
}

void ColoringSolver::undo(std::vector<int>& val, std::vector<int>& trail, std::size_t to) const {
  while (trail.size() > to) {
    val[trail.back()] = -1;
    trail.pop_back();
  }
}

}  // namespace detail

namespace {

std::vector<int> thread_split(int n, int threads) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::max(1, std::min(threads, n));
  return std::vector<int>(static_cast<std::size_t>(threads));
}

}  // namespace

std::vector<Coloring> enumerate_colorings(const MarkedGraphDiagram& d, const Biquandle& x, int threads) {
  const detail::ColoringSolver solver(d, x);
  auto to_coloring = [&](const std::vector<int>& val) {
    Coloring f(solver.var_of_label().size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = val[solver.var_of_label()[i]];
    return f;
  };
  std::vector<Coloring> out;
  if (solver.vars() == 0) {
    out.push_back({});
    return out;
  }
  auto slots = thread_split(x.size(), threads);
  std::vector<std::vector<Coloring>> parts(slots.size());
  auto work = [&](std::size_t t) {
    for (int c = static_cast<int>(t); c < x.size(); c += static_cast<int>(slots.size()))
      solver.search_from(c, [&](const std::vector<int>& val) { parts[t].push_back(to_coloring(val)); });
  };
  if (slots.size() == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < slots.size(); ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

Count counting_invariant(const MarkedGraphDiagram& d, const Biquandle& x, int threads) {
  const detail::ColoringSolver solver(d, x);
  if (solver.vars() == 0) return 1;
  auto slots = thread_split(x.size(), threads);
  std::vector<Count> parts(slots.size(), 0);
  auto work = [&](std::size_t t) {
    for (int c = static_cast<int>(t); c < x.size(); c += static_cast<int>(slots.size()))
      solver.search_from(c, [&](const std::vector<int>&) { ++parts[t]; });
  };
  if (slots.size() == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < slots.size(); ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  Count total = 0;
  for (Count c : parts) total += c;
  return total;
}

bool is_coloring(const MarkedGraphDiagram& d, const Biquandle& x, const Coloring& f) {
  const auto& labels = d.labels();
  if (f.size() != labels.size()) return false;
  for (int c : f)
    if (c < 0 || c >= x.size()) return false;
  auto col = [&](Label l) { return f[static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin())]; };
  for (const auto& r : relations(d)) {
    if (const auto* s = std::get_if<SaddleRelation>(&r)) {
      const int a = col(s->a);
      if (col(s->b) != a || col(s->c) != a || col(s->d) != a) return false;
    } else {
      const auto det = std::get<CrossingRelation>(r).determining();
      const int p = col(det[0]), q = col(det[1]);
      if (col(det[2]) != x.under(p, q) || col(det[3]) != x.over(q, p)) return false;
    }
  }
  return true;
}

std::vector<Coloring> brute_force_colorings(const MarkedGraphDiagram& d, const Biquandle& x) {
  const std::size_t m = d.labels().size();
  const Count total = checked_pow(static_cast<Count>(x.size()), static_cast<long>(m));
  if (total > 10'000'000) throw TooLarge("brute-force coloring search needs " + std::to_string(total) + " assignments");
  std::vector<Coloring> out;
  Coloring f(m, 0);
  for (Count k = 0; k < total; ++k) {
    Count rest = k;
    for (std::size_t i = m; i-- > 0;) {
      f[i] = static_cast<int>(rest % static_cast<Count>(x.size()));
      rest /= static_cast<Count>(x.size());
    }
    if (is_coloring(d, x, f)) out.push_back(f);
  }
  return out;
}

}  // namespace bqmod
