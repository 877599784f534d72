#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bqmod/error.hpp"

namespace bqmod::text {

struct Token {
  std::string text;
  int line;
  int column;
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

// Splits into whitespace-separated tokens, dropping '#' comments and blank lines.
std::vector<Line> tokenize(std::string_view input);

std::int64_t to_int(const Token& t);

// Cursor over tokenized lines with helpers that raise positioned ParseErrors.
class Reader {
 public:
  explicit Reader(std::string_view input);
  bool done() const noexcept { return pos_ >= lines_.size(); }
  const Line& peek() const;
  const Line& next();
  // Expects a line made of `keyword` followed by `args` integers.
  std::vector<std::int64_t> keyword(std::string_view keyword, std::size_t args);
  std::vector<std::int64_t> ints(std::size_t count);
  [[noreturn]] void fail_at_end(const std::string& what) const;

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

std::string fnv1a_hex(std::string_view data);

}  // namespace bqmod::text
