#include "bqmod/invariant.hpp"

#include <algorithm>
#include <cctype>
#include <json.hpp>
#include <stdexcept>
#include <thread>

#include "solver.hpp"

namespace bqmod {

namespace {

std::size_t index_of(const std::vector<Label>& labels, Label l) {
  return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
}

struct Columns {
  std::vector<int> of_label;
  int count = 0;
};

Columns bead_columns(const MarkedGraphDiagram& d, const BiquandleModule& m) {
  const detail::ColoringSolver solver(d, m.base());
  return {solver.var_of_label(), solver.vars()};
}

void check_coloring(const MarkedGraphDiagram& d, const Coloring& f, const BiquandleModule& m) {
  if (!is_coloring(d, m.base(), f)) throw std::invalid_argument("not a coloring of the diagram by the module's biquandle");
}

}  // namespace

BeadSystem bead_system(const MarkedGraphDiagram& d, const Coloring& f, const BiquandleModule& m) {
  check_coloring(d, f, m);
  const auto& labels = d.labels();
  const Columns cols = bead_columns(d, m);
  const Modulus& n = m.modulus();
  ModMatrix a(n, 2 * static_cast<Eigen::Index>(d.crossing_count()), cols.count);
  auto col = [&](Label l) { return cols.of_label[index_of(labels, l)]; };
  auto color = [&](Label l) { return f[index_of(labels, l)]; };
  Eigen::Index row = 0;
  for (const auto& rel : relations(d)) {
    const auto* c = std::get_if<CrossingRelation>(&rel);
    if (!c) continue;
    const auto [p, q, r, w] = c->determining();
    const int x = color(p), y = color(q);
    a.add(row, col(p), m.t(x, y));
    a.add(row, col(q), m.s(x, y));
    a.add(row, col(r), -1);
    a.add(row + 1, col(q), m.r(x, y));
    a.add(row + 1, col(w), -1);
    row += 2;
  }
  return {a, cols.of_label};
}

Count bead_count(const MarkedGraphDiagram& d, const Coloring& f, const BiquandleModule& m) {
  return null_count(bead_system(d, f, m).matrix);
}

Count brute_force_bead_count(const MarkedGraphDiagram& d, const Coloring& f, const BiquandleModule& m) {
  check_coloring(d, f, m);
  const auto& labels = d.labels();
  const Columns cols = bead_columns(d, m);
  const Count n = static_cast<Count>(m.modulus().value());
  const Count total = checked_pow(n, cols.count);
  if (total > 10'000'000) throw TooLarge("brute-force bead search needs " + std::to_string(total) + " assignments");
  struct Eq {
    int p, q, r, w;
    Residue t, s, rr;
  };
  std::vector<Eq> eqs;
  for (const auto& rel : relations(d))
    if (const auto* c = std::get_if<CrossingRelation>(&rel)) {
      const auto det = c->determining();
      const int x = f[index_of(labels, det[0])], y = f[index_of(labels, det[1])];
      eqs.push_back({cols.of_label[index_of(labels, det[0])], cols.of_label[index_of(labels, det[1])],
                     cols.of_label[index_of(labels, det[2])], cols.of_label[index_of(labels, det[3])], m.t(x, y),
                     m.s(x, y), m.r(x, y)});
    }
  const Residue mod = m.modulus().value();
  std::vector<Residue> v(static_cast<std::size_t>(cols.count), 0);
  Count found = 0;
  for (Count k = 0; k < total; ++k) {
    Count rest = k;
    for (auto& x : v) {
      x = static_cast<Residue>(rest % n);
      rest /= n;
    }
    bool ok = true;
    for (const Eq& e : eqs)
      if ((e.t * v[e.p] + e.s * v[e.q]) % mod != v[e.r] || (e.rr * v[e.q]) % mod != v[e.w]) {
        ok = false;
        break;
      }
    if (ok) ++found;
  }
  return found;
}

Count InvariantPolynomial::total() const {
  Count t = 0;
  for (const auto& [k, c] : terms_) t += c;
  return t;
}

std::string to_string(const InvariantPolynomial& p) {
  if (p.terms().empty()) return "0";
  std::string out;
  for (const auto& [k, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += "u";
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

InvariantPolynomial parse_polynomial(std::string_view text) {
  InvariantPolynomial p;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "0") return p;
  std::size_t i = 0;
  auto number = [&](Count& out) {
    const std::size_t start = i;
    Count v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + static_cast<Count>(s[i++] - '0');
    if (i == start) return false;
    out = v;
    return true;
  };
  while (i < s.size()) {
    const std::size_t at = i;
    Count c = 1, k = 0;
    const bool has_c = number(c);
    if (i < s.size() && s[i] == 'u') {
      ++i;
      k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!number(k)) throw ParseError(1, static_cast<int>(i) + 1, "expected an exponent");
      }
    } else if (!has_c) {
      throw ParseError(1, static_cast<int>(at) + 1, "expected a term");
    }
    p.add(k, c);
    if (i < s.size()) {
      if (s[i] != '+') throw ParseError(1, static_cast<int>(i) + 1, "expected '+'");
      ++i;
    }
  }
  return p;
}

InvariantPolynomial module_polynomial(const MarkedGraphDiagram& d, const Biquandle& x, const BiquandleModule& m,
                                      int threads) {
  if (!(x == m.base())) throw std::invalid_argument("the module is defined over a different biquandle");
  const auto colorings = enumerate_colorings(d, x, threads);
  std::vector<Count> counts(colorings.size(), 0);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto workers = static_cast<std::size_t>(std::max<std::size_t>(1, std::min<std::size_t>(threads, colorings.size())));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < colorings.size(); i += workers) counts[i] = bead_count(d, colorings[i], m);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  InvariantPolynomial p;
  for (Count c : counts) p.add(c);
  return p;
}

InvariantReport invariant_report(const std::string& name, const MarkedGraphDiagram& d, const BiquandleModule& m,
                                 int threads) {
  InvariantReport r{name, fingerprint(m.base()), fingerprint(m), 0, module_polynomial(d, m.base(), m, threads)};
  r.counting = r.polynomial.total();
  return r;
}

std::string to_json(const InvariantReport& r) {
  nlohmann::ordered_json j;
  j["diagram"] = r.diagram;
  j["biquandle"] = r.biquandle;
  j["module"] = r.module;
  j["counting"] = r.counting;
  j["polynomial"] = nlohmann::json::array();
  for (const auto& [k, c] : r.polynomial.terms()) j["polynomial"].push_back({k, c});
  return j.dump();
}

}  // namespace bqmod
