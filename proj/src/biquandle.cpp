#include "bqmod/biquandle.hpp"

#include <sstream>

#include "text.hpp"

namespace bqmod {

namespace {

void check_shape(const Table& under, const Table& over) {
  const auto n = under.rows();
  if (n == 0) throw MalformedTable("empty table");
  if (under.cols() != n || over.rows() != n || over.cols() != n)
    throw MalformedTable("tables must both be square of the same size");
  for (const Table* t : {&under, &over})
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if ((*t)(i, j) < 0 || (*t)(i, j) >= n)
          throw MalformedTable("entry out of range at row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1));
}

}  // namespace

Checked<Biquandle> verify_biquandle(const Table& u, const Table& o) {
  check_shape(u, o);
  const int n = static_cast<int>(u.rows());
  std::vector<Violation> found;

  for (int x = 0; x < n; ++x)
    if (u(x, x) != o(x, x)) found.push_back({"i", {x + 1}});

  // alpha_x(y) = y over x and beta_x(y) = y under x must be bijections.
  for (int x = 0; x < n; ++x) {
    std::vector<char> seen_a(n, 0), seen_b(n, 0);
    bool alpha = true, beta = true;
    for (int y = 0; y < n; ++y) {
      alpha = alpha && !seen_a[o(y, x)]++;
      beta = beta && !seen_b[u(y, x)]++;
    }
    if (!alpha) found.push_back({"ii.alpha", {x + 1}});
    if (!beta) found.push_back({"ii.beta", {x + 1}});
  }
  // S(x, y) = (y over x, x under y).
  {
    std::vector<int> hit(static_cast<std::size_t>(n) * n, -1);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const auto img = static_cast<std::size_t>(o(y, x)) * n + u(x, y);
        if (hit[img] >= 0) found.push_back({"ii.S", {hit[img] / n + 1, hit[img] % n + 1, x + 1, y + 1}});
        else hit[img] = x * n + y;
      }
  }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (u(u(x, y), u(z, y)) != u(u(x, z), o(y, z))) found.push_back({"iii.1", {x + 1, y + 1, z + 1}});
        if (o(u(x, y), u(z, y)) != u(o(x, z), o(y, z))) found.push_back({"iii.2", {x + 1, y + 1, z + 1}});
        if (o(o(x, y), o(z, y)) != o(o(x, z), u(y, z))) found.push_back({"iii.3", {x + 1, y + 1, z + 1}});
      }

  if (!found.empty()) return Checked<Biquandle>(std::move(found));
  return Checked<Biquandle>(Biquandle(u, o));
}

Checked<Biquandle> verify_biquandle_1(const Table& under, const Table& over) {
  return verify_biquandle(under.array() - 1, over.array() - 1);
}

Biquandle alexander_biquandle(const Modulus& n, Residue t, Residue s) {
  if (!n.is_unit(t)) throw NotAUnit(n.reduce(t), n.value());
  if (!n.is_unit(s)) throw NotAUnit(n.reduce(s), n.value());
  const int m = static_cast<int>(n.value());
  Table u(m, m), o(m, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      u(x, y) = static_cast<int>(n.reduce(t * x + (s - t) * y));
      o(x, y) = static_cast<int>(n.reduce(s * x));
    }
  return verify_biquandle(u, o).value();
}

Biquandle constant_action_biquandle(std::span<const int> sigma) {
  const int n = static_cast<int>(sigma.size());
  if (n == 0) throw NotAPermutation("empty permutation");
  std::vector<char> seen(n, 0);
  for (int v : sigma) {
    if (v < 1 || v > n || seen[v - 1]) throw NotAPermutation("not a permutation of 1.." + std::to_string(n));
    seen[v - 1] = 1;
  }
  Table t(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t(x, y) = sigma[x] - 1;
  return verify_biquandle(t, t).value();
}

BiquandleTables parse_biquandle_tables(std::string_view input) {
  text::Reader in(input);
  const auto n = in.keyword("size", 1)[0];
  if (n < 1 || n > 4096) throw ParseError(in.peek().number, 1, "size must be between 1 and 4096");
  BiquandleTables out{Table(n, n), Table(n, n)};
  for (auto [name, table] : {std::pair{"under", &out.under}, std::pair{"over", &out.over}}) {
    in.keyword(name, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const text::Line& line = in.peek();
      const auto row = in.ints(static_cast<std::size_t>(n));
      for (Eigen::Index j = 0; j < n; ++j) {
        if (row[j] < 1 || row[j] > n)
          throw ParseError(line.number, line.tokens[j].column, "entry must lie in 1.." + std::to_string(n));
        (*table)(i, j) = static_cast<int>(row[j] - 1);
      }
    }
  }
  if (!in.done()) {
    const text::Line& extra = in.peek();
    throw ParseError(extra.number, extra.tokens[0].column, "unexpected trailing input");
  }
  return out;
}

Biquandle parse_biquandle(std::string_view text) {
  auto t = parse_biquandle_tables(text);
  return verify_biquandle(t.under, t.over).value();
}

std::string render_biquandle(const Biquandle& x) {
  std::ostringstream out;
  out << "size " << x.size() << '\n';
  for (auto [name, table] : {std::pair{"under", &x.under_table()}, std::pair{"over", &x.over_table()}}) {
    out << name << '\n';
    for (int i = 0; i < x.size(); ++i) {
      for (int j = 0; j < x.size(); ++j) out << (j ? " " : "") << (*table)(i, j) + 1;
      out << '\n';
    }
  }
  return out.str();
}

std::string fingerprint(const Biquandle& x) { return text::fnv1a_hex(render_biquandle(x)); }

}  // namespace bqmod
