#include "bqmod/module.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "text.hpp"

namespace bqmod {

namespace {

enum Mat { T = 0, S = 1, R = 2 };

// A product of one or two entries; b = -1 for a single entry.
struct Term {
  int a;
  int b;
};

struct Formula {
  const char* axiom;
  std::vector<int> witness;
  std::vector<Term> lhs;
  std::vector<Term> rhs;
};

std::vector<Formula> formulas(const Biquandle& x) {
  const int n = x.size();
  auto v = [n](Mat m, int i, int j) { return m * n * n + i * n + j; };
  auto U = [&](int a, int b) { return x.under(a, b); };
  auto O = [&](int a, int b) { return x.over(a, b); };
  std::vector<Formula> out;
  for (int a = 0; a < n; ++a) out.push_back({"i.i", {a + 1}, {{v(T, a, a), -1}, {v(S, a, a), -1}}, {{v(R, a, a), -1}}});
  using Build = std::function<Formula(int, int, int)>;
  const std::vector<std::pair<const char*, Build>> laws = {
      {"iii.i",
       [&](int a, int b, int c) {
         return Formula{"iii.i", {}, {{v(R, O(b, a), O(c, a)), v(R, a, c)}}, {{v(R, U(a, b), O(c, b)), v(R, b, c)}}};
       }},
      {"iii.ii",
       [&](int a, int b, int c) {
         return Formula{"iii.ii", {}, {{v(R, U(a, c), U(b, c)), v(T, b, c)}}, {{v(T, O(b, a), O(c, a)), v(R, a, b)}}};
       }},
      {"iii.iii",
       [&](int a, int b, int c) {
         return Formula{"iii.iii", {}, {{v(R, U(a, c), U(b, c)), v(S, b, c)}}, {{v(S, O(b, a), O(c, a)), v(R, a, c)}}};
       }},
      {"iii.iv",
       [&](int a, int b, int c) {
         return Formula{"iii.iv", {}, {{v(T, U(a, c), U(b, c)), v(T, a, c)}}, {{v(T, U(a, b), O(c, b)), v(T, a, b)}}};
       }},
      {"iii.v",
       [&](int a, int b, int c) {
         return Formula{"iii.v", {}, {{v(S, U(a, c), U(b, c)), v(T, b, c)}}, {{v(T, U(a, b), O(c, b)), v(S, a, b)}}};
       }},
      {"iii.vi",
       [&](int a, int b, int c) {
         return Formula{"iii.vi",
                        {},
                        {{v(T, U(a, c), U(b, c)), v(S, a, c)}, {v(S, U(a, c), U(b, c)), v(S, b, c)}},
                        {{v(S, U(a, b), O(c, b)), v(R, b, c)}}};
       }},
  };
  for (const auto& [name, build] : laws)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          Formula f = build(a, b, c);
          f.witness = {a + 1, b + 1, c + 1};
          out.push_back(std::move(f));
        }
  return out;
}

Residue eval(const std::vector<Term>& side, const std::vector<Residue>& val, const Modulus& n) {
  Residue sum = 0;
  for (const Term& t : side) {
    Residue p = val[t.a];
    if (t.b >= 0) p = n.reduce(p * val[t.b]);
    sum = n.reduce(sum + p);
  }
  return sum;
}

std::vector<Residue> flatten(const IntMatrix& t, const IntMatrix& s, const IntMatrix& r) {
  const auto n = t.rows();
  std::vector<Residue> out;
  out.reserve(static_cast<std::size_t>(3 * n * n));
  for (const IntMatrix* m : {&t, &s, &r})
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) out.push_back((*m)(i, j));
  return out;
}

void check_dimensions(const Biquandle& x, const Modulus& n, const IntMatrix& t, const IntMatrix& s,
                      const IntMatrix& r) {
  const Eigen::Index k = x.size();
  for (auto [name, m] : {std::pair{'t', &t}, std::pair{'s', &s}, std::pair{'r', &r}}) {
    if (m->rows() != k || m->cols() != k)
      throw DimensionMismatch(std::string("matrix ") + name + " is " + std::to_string(m->rows()) + "x" +
                              std::to_string(m->cols()) + ", expected " + std::to_string(k) + "x" + std::to_string(k));
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        if ((*m)(i, j) < 0 || (*m)(i, j) >= n.value())
          throw std::invalid_argument(std::string("entry of ") + name + " outside [0, " + std::to_string(n.value()) + ")");
  }
}

}  // namespace

std::vector<AxiomInstance> module_axiom_instances(const Biquandle& x, const Modulus& n, const IntMatrix& t,
                                                  const IntMatrix& s, const IntMatrix& r) {
  check_dimensions(x, n, t, s, r);
  const auto val = flatten(t, s, r);
  std::vector<AxiomInstance> out;
  for (const Formula& f : formulas(x)) out.push_back({f.axiom, f.witness, eval(f.lhs, val, n), eval(f.rhs, val, n)});
  return out;
}

Checked<BiquandleModule> verify_module(const Biquandle& x, const Modulus& n, const IntMatrix& t, const IntMatrix& s,
                                       const IntMatrix& r) {
  check_dimensions(x, n, t, s, r);
  for (const IntMatrix* m : {&t, &r})
    for (Eigen::Index i = 0; i < m->rows(); ++i)
      for (Eigen::Index j = 0; j < m->cols(); ++j)
        if (!n.is_unit((*m)(i, j))) throw NotAUnit((*m)(i, j), n.value());
  const auto val = flatten(t, s, r);
  std::vector<Violation> found;
  for (const Formula& f : formulas(x)) {
    if (eval(f.lhs, val, n) == eval(f.rhs, val, n)) continue;
    found.push_back({f.axiom, f.witness});
    if (found.size() == 100) break;
  }
  if (!found.empty()) return Checked<BiquandleModule>(std::move(found));
  return Checked<BiquandleModule>(BiquandleModule(x, n, t, s, r));
}

std::vector<BiquandleModule> find_modules(const Biquandle& x, const Modulus& n, std::optional<std::size_t> limit,
                                          int threads) {
  const int k = x.size();
  const int cells = k * k;
  const int total = 3 * cells;
  const auto all = formulas(x);
  // Each formula is checked once the last of its entries has a value.
  std::vector<std::vector<int>> due(static_cast<std::size_t>(total));
  for (std::size_t i = 0; i < all.size(); ++i) {
    int last = 0;
    for (const auto* side : {&all[i].lhs, &all[i].rhs})
      for (const Term& t : *side) last = std::max({last, t.a, t.b});
    due[last].push_back(static_cast<int>(i));
  }
  std::vector<Residue> units, everything;
  for (Residue v = 0; v < n.value(); ++v) {
    everything.push_back(v);
    if (n.is_unit(v)) units.push_back(v);
  }

  auto to_module = [&](const std::vector<Residue>& val) {
    IntMatrix t(k, k), s(k, k), r(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        t(i, j) = val[i * k + j];
        s(i, j) = val[cells + i * k + j];
        r(i, j) = val[2 * cells + i * k + j];
      }
    return BiquandleModule(verify_module(x, n, t, s, r).value());
  };

  // Depth-first over entries in order, starting with entry 0 fixed to `first`.
  auto search = [&](Residue first, std::vector<BiquandleModule>& out) {
    std::vector<Residue> val(static_cast<std::size_t>(total), 0);
    std::function<bool(int)> dfs = [&](int i) -> bool {
      if (i == total) {
        out.push_back(to_module(val));
        return !limit || out.size() < *limit;
      }
      const int m = i / cells, cell = i % cells;
      const bool diag = cell / k == cell % k;
      std::vector<Residue> forced;
      const std::vector<Residue>* domain = m == S ? &everything : &units;
      if (m == R && diag) {
        const Residue v = n.reduce(val[cell] + val[cells + cell]);
        if (!n.is_unit(v)) return true;
        forced = {v};
        domain = &forced;
      }
      if (i == 0) {
        forced = {first};
        domain = &forced;
      }
      for (Residue v : *domain) {
        val[i] = v;
        bool ok = true;
        for (int f : due[i])
          if (eval(all[f].lhs, val, n) != eval(all[f].rhs, val, n)) {
            ok = false;
            break;
          }
        if (ok && !dfs(i + 1)) return false;
      }
      return true;
    };
    dfs(0);
  };

  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const std::size_t parts = units.size();
  std::vector<std::vector<BiquandleModule>> found(parts);
  const auto workers = static_cast<std::size_t>(std::max(1, std::min<int>(threads, static_cast<int>(parts))));
  auto work = [&](std::size_t w) {
    for (std::size_t p = w; p < parts; p += workers) search(units[p], found[p]);
  };
  if (workers == 1) {
    // Serially, later parts are only needed while the limit is unmet.
    std::size_t have = 0;
    for (std::size_t p = 0; p < parts && (!limit || have < *limit); ++p) {
      search(units[p], found[p]);
      have += found[p].size();
    }
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  std::vector<BiquandleModule> out;
  for (auto& f : found)
    for (auto& m : f) {
      if (limit && out.size() >= *limit) return out;
      out.push_back(std::move(m));
    }
  return out;
}

ModuleMatrices parse_module_matrices(std::string_view input, int size) {
  text::Reader in(input);
  const text::Line& head = in.peek();
  const auto nv = in.keyword("ring", 1)[0];
  if (nv < 2 || nv > (std::int64_t{1} << 31)) throw ParseError(head.number, head.tokens[1].column, "ring modulus must be at least 2");
  ModuleMatrices out{Modulus(nv), IntMatrix(size, size), IntMatrix(size, size), IntMatrix(size, size)};
  for (auto [name, m] : {std::pair{"t", &out.t}, std::pair{"s", &out.s}, std::pair{"r", &out.r}}) {
    in.keyword(name, 0);
    for (int i = 0; i < size; ++i) {
      const text::Line& line = in.peek();
      const auto row = in.ints(static_cast<std::size_t>(size));
      for (int j = 0; j < size; ++j) {
        if (row[j] < 0 || row[j] >= nv)
          throw ParseError(line.number, line.tokens[j].column, "entry must lie in 0.." + std::to_string(nv - 1));
        (*m)(i, j) = row[j];
      }
    }
  }
  if (!in.done()) {
    const text::Line& extra = in.peek();
    throw ParseError(extra.number, extra.tokens[0].column, "unexpected trailing input");
  }
  return out;
}

BiquandleModule parse_module(std::string_view input, const Biquandle& x) {
  auto m = parse_module_matrices(input, x.size());
  return verify_module(x, m.n, m.t, m.s, m.r).value();
}

std::string render_module(const BiquandleModule& m) {
  std::ostringstream out;
  out << "ring " << m.modulus().value() << '\n';
  for (auto [name, mat] : {std::pair{"t", &m.t()}, std::pair{"s", &m.s()}, std::pair{"r", &m.r()}}) {
    out << name << '\n';
    for (Eigen::Index i = 0; i < mat->rows(); ++i) {
      for (Eigen::Index j = 0; j < mat->cols(); ++j) out << (j ? " " : "") << (*mat)(i, j);
      out << '\n';
    }
  }
  return out.str();
}

std::string fingerprint(const BiquandleModule& m) {
  return text::fnv1a_hex(render_biquandle(m.base()) + render_module(m));
}

}  // namespace bqmod
