#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bqmod/mgd.hpp"

namespace bqmod::catalog {

struct CatalogEntry {
  std::string name;
  MarkedGraphDiagram diagram;
  int components;
  std::vector<int> genera;  // per surface component, ordered by smallest label
  std::string provenance;   // the leading comment block of the resource
};

// Throws UnknownName with the closest name as suggestion.
const CatalogEntry& get(std::string_view name);
// Sorted, without duplicates.
std::vector<std::string> list();
// The resource text as shipped.
std::string_view source(std::string_view name);

// Closest catalog name by edit distance; ties go to the earlier name.
std::string nearest_name(std::string_view name);

}  // namespace bqmod::catalog
