#include "bqmod/catalog.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "catalog_data.hpp"

namespace bqmod::catalog {

namespace {

std::string provenance_of(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line[0] != '#') break;
    line.remove_prefix(1);
    if (!line.empty() && line[0] == ' ') line.remove_prefix(1);
    if (!out.empty()) out += ' ';
    out += line;
  }
  return out;
}

CatalogEntry build(const detail::CatalogSource& src) {
  CatalogEntry e{std::string(src.name), parse_mgd(src.text), 0, {}, provenance_of(src.text)};
  if (check_admissible(e.diagram) != Admissibility::yes)
    throw std::logic_error("catalog entry " + e.name + " is not certified admissible");
  for (const SurfaceComponent& c : surface_components(e.diagram)) e.genera.push_back(c.genus());
  e.components = static_cast<int>(e.genera.size());
  return e;
}

const std::map<std::string, CatalogEntry, std::less<>>& entries() {
  static const auto all = [] {
    std::map<std::string, CatalogEntry, std::less<>> m;
    for (const auto& src : detail::catalog_sources()) m.emplace(std::string(src.name), build(src));
    return m;
  }();
  return all;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

const CatalogEntry& get(std::string_view name) {
  const auto& all = entries();
  auto it = all.find(name);
  if (it == all.end()) throw UnknownName(std::string(name), nearest_name(name));
  return it->second;
}

std::vector<std::string> list() {
  std::vector<std::string> out;
  for (const auto& src : detail::catalog_sources()) out.emplace_back(src.name);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view source(std::string_view name) {
  for (const auto& src : detail::catalog_sources())
    if (src.name == name) return src.text;
  throw UnknownName(std::string(name), nearest_name(name));
}

std::string nearest_name(std::string_view name) {
  std::string best;
  std::size_t best_d = 0;
  for (const std::string& n : list()) {
    const std::size_t d = edit_distance(name, n);
    if (best.empty() || d < best_d) best = n, best_d = d;
  }
  return best;
}

}  // namespace bqmod::catalog
