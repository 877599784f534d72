#pragma once

#include <string_view>
#include <vector>

namespace bqmod::detail {

struct CatalogSource {
  std::string_view name;
  std::string_view text;
};

// Generated from catalog/*.mgd at build time, sorted by name.
const std::vector<CatalogSource>& catalog_sources();

}  // namespace bqmod::detail
