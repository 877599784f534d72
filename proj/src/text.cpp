#include "text.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace bqmod::text {

std::vector<Line> tokenize(std::string_view input) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= input.size()) {
    std::size_t end = input.find('\n', start);
    if (end == std::string_view::npos) end = input.size();
    std::string_view raw = input.substr(start, end - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back(Token{std::string(raw.substr(i, j - i)), number, static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == input.size()) break;
    start = end + 1;
  }
  return out;
}

std::int64_t to_int(const Token& t) {
  std::int64_t v = 0;
  const char* b = t.text.data();
  const char* e = b + t.text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw ParseError(t.line, t.column, "expected an integer, got '" + t.text + "'");
  return v;
}

Reader::Reader(std::string_view input) : lines_(tokenize(input)) {
  int n = 1;
  for (char c : input)
    if (c == '\n') ++n;
  last_line_ = n;
}

const Line& Reader::peek() const {
  if (done()) fail_at_end("unexpected end of input");
  return lines_[pos_];
}

const Line& Reader::next() {
  const Line& l = peek();
  ++pos_;
  return l;
}

void Reader::fail_at_end(const std::string& what) const { throw ParseError(last_line_, 1, what); }

std::vector<std::int64_t> Reader::keyword(std::string_view kw, std::size_t args) {
  const Line& l = next();
  if (l.tokens[0].text != kw)
    throw ParseError(l.number, l.tokens[0].column, "expected '" + std::string(kw) + "', got '" + l.tokens[0].text + "'");
  if (l.tokens.size() != args + 1) {
    const Token& at = l.tokens.size() > args + 1 ? l.tokens[args + 1] : l.tokens.back();
    throw ParseError(l.number, at.column, "'" + std::string(kw) + "' takes " + std::to_string(args) + " argument(s)");
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 1; i < l.tokens.size(); ++i) out.push_back(to_int(l.tokens[i]));
  return out;
}

std::vector<std::int64_t> Reader::ints(std::size_t count) {
  const Line& l = next();
  if (l.tokens.size() != count) {
    const Token& at = l.tokens.size() > count ? l.tokens[count] : l.tokens.back();
    throw ParseError(l.number, at.column, "expected " + std::to_string(count) + " entries, got " + std::to_string(l.tokens.size()));
  }
  std::vector<std::int64_t> out;
  for (const Token& t : l.tokens) out.push_back(to_int(t));
  return out;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bqmod::text
