#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "bqmod/module.hpp"
#include "support.hpp"

using namespace bqmod;
using bqmod::test::int_matrix;

namespace {

IntMatrix constant(int size, std::int64_t v) { return IntMatrix::Constant(size, size, v); }

bool contains(const std::vector<BiquandleModule>& ms, const BiquandleModule& m) {
  return std::find(ms.begin(), ms.end(), m) != ms.end();
}

const AxiomInstance* instance(const std::vector<AxiomInstance>& all, const std::string& axiom, std::vector<int> w) {
  for (const auto& i : all)
    if (i.axiom == axiom && i.witness == w) return &i;
  return nullptr;
}

std::int64_t totient(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

}  // namespace

TEST_CASE("first Z_5 triple is a module with both spot checks passing") {
  const Biquandle x = test::swap2();
  const Modulus five(5);
  const IntMatrix t = int_matrix({{2, 3}, {4, 1}}), s = int_matrix({{2, 0}, {0, 1}}), r = int_matrix({{4, 4}, {3, 2}});
  const auto checked = verify_module(x, five, t, s, r);
  REQUIRE(checked.ok());
  CHECK(checked.value() == test::z5_ex42());
  const auto all = module_axiom_instances(x, five, t, s, r);
  const auto* vi = instance(all, "iii.vi", {1, 2, 2});
  REQUIRE(vi);
  CHECK(vi->lhs == 0);
  CHECK(vi->rhs == 0);
  const auto* iii = instance(all, "iii.iii", {1, 2, 2});
  REQUIRE(iii);
  CHECK(iii->lhs == 3);
  CHECK(iii->rhs == 3);
  for (const auto& i : all) CHECK(i.lhs == i.rhs);
}

TEST_CASE("axiom instances come in axiom then witness order") {
  const Biquandle x = test::swap2();
  const auto all = module_axiom_instances(x, Modulus(5), constant(2, 1), constant(2, 0), constant(2, 1));
  REQUIRE(all.size() == 2 + 6 * 8);
  CHECK(all[0].axiom == "i.i");
  CHECK(all[0].witness == std::vector<int>{1});
  CHECK(all[2].axiom == "iii.i");
  CHECK(all[2].witness == std::vector<int>{1, 1, 1});
  CHECK(all[3].witness == std::vector<int>{1, 1, 2});
  CHECK(all.back().axiom == "iii.vi");
  CHECK(all.back().witness == std::vector<int>{2, 2, 2});
}

TEST_CASE("the trivial module is valid over every biquandle") {
  for (const Biquandle& x : {test::swap2(), test::x3(), alexander_biquandle(Modulus(5), 2, 3)})
    for (std::int64_t n : {2, 3, 5, 6})
      CHECK(verify_module(x, Modulus(n), constant(x.size(), 1), constant(x.size(), 0), constant(x.size(), 1)).ok());
}

TEST_CASE("changing s_11 breaks axiom i.i at x = 1") {
  const auto checked = verify_module(test::swap2(), Modulus(5), int_matrix({{2, 3}, {4, 1}}),
                                     int_matrix({{3, 0}, {0, 1}}), int_matrix({{4, 4}, {3, 2}}));
  REQUIRE_FALSE(checked.ok());
  CHECK(checked.violations().front() == Violation{"i.i", {1}});
}

TEST_CASE("input errors") {
  const Biquandle x = test::swap2();
  CHECK_THROWS_AS(verify_module(x, Modulus(5), constant(3, 1), constant(2, 0), constant(2, 1)), DimensionMismatch);
  CHECK_THROWS_AS(verify_module(x, Modulus(5), int_matrix({{0, 1}, {1, 1}}), constant(2, 0), constant(2, 1)), NotAUnit);
  CHECK_THROWS_AS(verify_module(x, Modulus(4), constant(2, 1), constant(2, 0), constant(2, 2)), NotAUnit);
  CHECK_THROWS_AS(verify_module(x, Modulus(5), constant(2, 1), constant(2, 7), constant(2, 1)), std::invalid_argument);
}

TEST_CASE("violations are capped at 100") {
  const Biquandle x = alexander_biquandle(Modulus(5), 2, 3);
  IntMatrix t(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) t(i, j) = 1 + (i + 2 * j) % 4;
  const auto all = module_axiom_instances(x, Modulus(5), t, constant(5, 1), constant(5, 2));
  const auto failing = std::count_if(all.begin(), all.end(), [](const AxiomInstance& i) { return i.lhs != i.rhs; });
  REQUIRE(failing > 100);
  const auto checked = verify_module(x, Modulus(5), t, constant(5, 1), constant(5, 2));
  REQUIRE_FALSE(checked.ok());
  CHECK(checked.violations().size() == 100);
}

TEST_CASE("search over Z_5 for the swap biquandle") {
  const auto found = find_modules(test::swap2(), Modulus(5));
  CHECK(contains(found, test::z5_ex42()));
  CHECK(contains(found, test::z5_table()));
  CHECK(found.front() == verify_module(test::swap2(), Modulus(5), constant(2, 1), constant(2, 0), constant(2, 1)).value());
  for (const auto& m : found) CHECK(verify_module(m.base(), m.modulus(), m.t(), m.s(), m.r()).ok());
  CHECK(find_modules(test::swap2(), Modulus(5), {}, 2) == found);
  CHECK(find_modules(test::swap2(), Modulus(5), {}, 8) == found);
  const auto first3 = find_modules(test::swap2(), Modulus(5), 3);
  REQUIRE(first3.size() == 3);
  CHECK(std::equal(first3.begin(), first3.end(), found.begin()));
}

TEST_CASE("search over Z_3 for the three-element biquandle") {
  const auto found = find_modules(test::x3(), Modulus(3), {}, 0);
  CHECK(contains(found, test::z3_m1()));
  CHECK(contains(found, test::z3_m2()));
  for (const auto& m : found) CHECK(verify_module(m.base(), m.modulus(), m.t(), m.s(), m.r()).ok());
  CHECK(find_modules(test::x3(), Modulus(3), {}, 1) == found);
}

TEST_CASE("one-element modules are the triples with t, t + s units") {
  const std::vector<int> one{1};
  const Biquandle x = constant_action_biquandle(one);
  for (std::int64_t n = 2; n <= 7; ++n) {
    const Modulus m(n);
    const auto found = find_modules(x, m);
    std::size_t brute = 0;
    for (std::int64_t t = 0; t < n; ++t)
      for (std::int64_t s = 0; s < n; ++s)
        for (std::int64_t r = 0; r < n; ++r) {
          if (!m.is_unit(t) || !m.is_unit(r)) continue;
          if (verify_module(x, m, constant(1, t), constant(1, s), constant(1, r)).ok()) ++brute;
        }
    CHECK(found.size() == brute);
    CHECK(found.size() == static_cast<std::size_t>(totient(n) * totient(n)));
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b) {
        if (!m.is_unit(a) || !m.is_unit(a + b)) continue;
        const auto mod = verify_module(x, m, constant(1, a), constant(1, b), constant(1, m.reduce(a + b)));
        CHECK(contains(found, mod.value()));
      }
  }
}

TEST_CASE("module files") {
  CHECK(test::z5_ex42().t(0, 0) == 2);
  CHECK(test::z5_ex42().s(0, 0) == 2);
  CHECK(test::z5_ex42().r(0, 0) == 4);
  CHECK(test::z3_m1().modulus().value() == 3);
  CHECK_THROWS_AS(parse_module("ring 5\nt\n0 1\n1 1\ns\n0 0\n0 0\nr\n1 1\n1 1\n", test::swap2()), NotAUnit);
  CHECK_THROWS_AS(parse_module("ring 5\nt\n1 1\n1 1\ns\n0 0\n0 0\nr\n1 1\n", test::swap2()), ParseError);
  CHECK_THROWS_AS(parse_module("ring 5\nt\n1 1\n1 1\ns\n1 0\n0 0\nr\n1 1\n1 1\n", test::swap2()), AxiomViolation);
  for (const auto& m : {test::z5_ex42(), test::z5_table(), test::z3_m1(), test::z3_m2()}) {
    CHECK(parse_module(render_module(m), m.base()) == m);
    CHECK(fingerprint(parse_module(render_module(m), m.base())) == fingerprint(m));
  }
}
