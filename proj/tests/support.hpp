#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "bqmod/biquandle.hpp"
#include "bqmod/catalog.hpp"
#include "bqmod/module.hpp"

namespace bqmod::test {

inline std::string data_path(const std::string& file) { return std::string(BQMOD_DATA_DIR) + "/" + file; }

inline std::string read_data(const std::string& file) {
  std::ifstream in(data_path(file), std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Biquandle swap2() { return parse_biquandle(read_data("swap2.bq")); }
inline Biquandle x3() { return parse_biquandle(read_data("x3.bq")); }
inline BiquandleModule z5_ex42() { return parse_module(read_data("z5_ex42.bqm"), swap2()); }
inline BiquandleModule z5_table() { return parse_module(read_data("z5_table.bqm"), swap2()); }
inline BiquandleModule z3_m1() { return parse_module(read_data("z3_m1.bqm"), x3()); }
inline BiquandleModule z3_m2() { return parse_module(read_data("z3_m2.bqm"), x3()); }

inline const MarkedGraphDiagram& entry(const std::string& name) { return catalog::get(name).diagram; }

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (auto v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace bqmod::test
