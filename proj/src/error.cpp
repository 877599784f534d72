#include "bqmod/error.hpp"

namespace bqmod {

std::string describe(const Violation& v) {
  std::string out = "axiom " + v.axiom + " fails at (";
  for (std::size_t i = 0; i < v.witness.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v.witness[i]);
  }
  return out + ")";
}

namespace {
std::string summarize(const std::vector<Violation>& vs) {
  if (vs.empty()) return "axiom violation";
  std::string out = std::to_string(vs.size()) + " axiom violation(s); first: " + describe(vs.front());
  return out;
}
}  // namespace

AxiomViolation::AxiomViolation(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

}  // namespace bqmod
