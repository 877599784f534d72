#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "bqmod/catalog.hpp"
#include "bqmod/invariant.hpp"
#include "support.hpp"

using namespace bqmod;

namespace {

std::vector<BiquandleModule> battery() { return {test::z5_ex42(), test::z5_table(), test::z3_m1(), test::z3_m2()}; }

InvariantPolynomial poly(const std::string& s) { return parse_polynomial(s); }

}  // namespace

TEST_CASE("polynomial text form") {
  InvariantPolynomial p;
  p.add(25, 2);
  p.add(5, 2);
  CHECK(to_string(p) == "2u^5 + 2u^25");
  InvariantPolynomial q;
  q.add(1);
  q.add(0);
  CHECK(to_string(q) == "1 + u");
  CHECK(to_string(InvariantPolynomial{}) == "0");
  for (const char* s : {"2u^5 + 2u^25", "u", "1", "3u^3", "2u + 2u^25", "4u^25 + 4u^125", "0"})
    CHECK(to_string(parse_polynomial(s)) == s);
  CHECK(parse_polynomial("u^3+u^3") == poly("2u^3"));
  CHECK_THROWS_AS(parse_polynomial("2v"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("u^"), ParseError);
  CHECK(p.total() == 4);
}

TEST_CASE("bead system of the first coloring of the two-component example") {
  const auto& d = test::entry("6_1^{0,1}");
  const auto m = test::z5_ex42();
  const auto cs = enumerate_colorings(d, m.base());
  REQUIRE(cs.size() == 4);
  const auto sys = bead_system(d, cs.front(), m);
  CHECK(sys.matrix.rows() == 8);
  CHECK(sys.matrix.cols() == 6);
  CHECK(null_count(sys.matrix) == 5);
  CHECK(bead_count(d, cs.front(), m) == 5);
  std::vector<Count> rest;
  for (std::size_t i = 1; i < cs.size(); ++i) rest.push_back(bead_count(d, cs[i], m));
  std::sort(rest.begin(), rest.end());
  CHECK(rest == std::vector<Count>{5, 25, 25});
  for (const auto& f : cs) CHECK(bead_count(d, f, m) == brute_force_bead_count(d, f, m));
}

TEST_CASE("bead rows have the forward form with outputs negated") {
  const auto d = parse_mgd("mgd v1\nX+ 1 2 2 1\n");
  const auto m = test::z5_ex42();
  const Coloring f{0, m.base().under(0, 0)};
  const auto sys = bead_system(d, f, m);
  REQUIRE(sys.matrix.rows() == 2);
  REQUIRE(sys.matrix.cols() == 2);
  // Row 1: t a + s a - b = 0; row 2: r a - b = 0, with a on semiarc 1 and b on semiarc 2.
  const int a = sys.column_of_label[0], b = sys.column_of_label[1];
  CHECK(sys.matrix(0, a) == (m.t(0, 0) + m.s(0, 0)) % 5);
  CHECK(sys.matrix(0, b) == 4);
  CHECK(sys.matrix(1, a) == m.r(0, 0));
  CHECK(sys.matrix(1, b) == 4);
}

TEST_CASE("a kink leaves one free bead") {
  for (const char* text : {"mgd v1\nX+ 1 2 2 1\n", "mgd v1\nX- 1 1 2 2\n", "mgd v1\nX+ 2 1 1 2\n"}) {
    const auto d = parse_mgd(text);
    for (const auto& m : battery())
      for (const auto& f : enumerate_colorings(d, m.base()))
        CHECK(bead_count(d, f, m) == static_cast<Count>(m.modulus().value()));
  }
}

TEST_CASE("free loop") {
  const auto d = parse_mgd("mgd v1\nO 1\n");
  for (const auto& m : battery()) {
    const Coloring f{0};
    const auto sys = bead_system(d, f, m);
    CHECK(sys.matrix.rows() == 0);
    CHECK(sys.matrix.cols() == 1);
    CHECK(bead_count(d, f, m) == static_cast<Count>(m.modulus().value()));
    CHECK(brute_force_bead_count(d, f, m) == static_cast<Count>(m.modulus().value()));
  }
}

TEST_CASE("invalid colorings and foreign modules are rejected") {
  const auto& d = test::entry("6_1^{0,1}");
  CHECK_THROWS_AS(bead_system(d, Coloring(d.labels().size(), 0), test::z5_ex42()), std::invalid_argument);
  CHECK_THROWS_AS(module_polynomial(d, test::x3(), test::z5_ex42()), std::invalid_argument);
}

TEST_CASE("worked example polynomial") {
  const auto p = module_polynomial(test::entry("6_1^{0,1}"), test::swap2(), test::z5_ex42());
  CHECK(to_string(p) == "2u^5 + 2u^25");
}

TEST_CASE("separation of the two-component links with the table module") {
  const auto a = module_polynomial(test::entry("6_1^{0,1}"), test::swap2(), test::z5_table());
  const auto b = module_polynomial(test::entry("8_1^{1,1}"), test::swap2(), test::z5_table());
  CHECK(to_string(a) == "2u^5 + 2u^25");
  CHECK(to_string(b) == "2u + 2u^25");
  CHECK(a != b);
  CHECK(a.total() == b.total());
}

TEST_CASE("torus and sphere unlink has two free bead classes per coloring") {
  const auto& d = test::entry("unlink_T2_S2");
  const auto m = test::z5_ex42();
  for (const auto& f : enumerate_colorings(d, m.base())) {
    const auto sys = bead_system(d, f, m);
    CHECK(sys.matrix.rows() == 0);
    CHECK(sys.matrix.cols() == 2);
  }
  CHECK(to_string(module_polynomial(d, test::swap2(), m)) == "4u^25");
}

TEST_CASE("oracle equivalence on small bead systems over Z_3") {
  int compared = 0;
  for (const auto& name : catalog::list()) {
    const auto& d = test::entry(name);
    for (const auto& m : {test::z3_m1(), test::z3_m2()})
      for (const auto& f : enumerate_colorings(d, m.base())) {
        const auto sys = bead_system(d, f, m);
        if (sys.matrix.cols() > 8) continue;
        CHECK(bead_count(d, f, m) == brute_force_bead_count(d, f, m));
        ++compared;
      }
  }
  CHECK(compared > 0);
}

TEST_CASE("oracle equivalence on every catalog diagram over Z_5") {
  for (const auto& name : catalog::list()) {
    const auto& d = test::entry(name);
    for (const auto& m : {test::z5_ex42(), test::z5_table()})
      for (const auto& f : enumerate_colorings(d, m.base())) {
        if (bead_system(d, f, m).matrix.cols() > 9) continue;
        CHECK(bead_count(d, f, m) == brute_force_bead_count(d, f, m));
      }
  }
}

TEST_CASE("total multiplicity equals the counting invariant") {
  for (const auto& name : catalog::list())
    for (const auto& m : battery())
      CHECK(module_polynomial(test::entry(name), m.base(), m).total() ==
            counting_invariant(test::entry(name), m.base()));
}

TEST_CASE("the trivial module gives a single exponent") {
  for (const Biquandle& x : {test::swap2(), test::x3()}) {
    const auto trivial = verify_module(x, Modulus(3), IntMatrix::Constant(x.size(), x.size(), 1),
                                       IntMatrix::Zero(x.size(), x.size()), IntMatrix::Constant(x.size(), x.size(), 1))
                             .value();
    for (const auto& name : catalog::list()) {
      CHECK(module_polynomial(test::entry(name), x, trivial).terms().size() == 1);
    }
  }
}

TEST_CASE("polynomials do not depend on the thread count") {
  for (const auto& name : catalog::list())
    for (const auto& m : battery()) {
      const auto one = module_polynomial(test::entry(name), m.base(), m, 1);
      CHECK(module_polynomial(test::entry(name), m.base(), m, 2) == one);
      CHECK(module_polynomial(test::entry(name), m.base(), m, 8) == one);
    }
}

TEST_CASE("json report schema") {
  const auto m = test::z5_ex42();
  const auto r = invariant_report("6_1^{0,1}", test::entry("6_1^{0,1}"), m, 1);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j.at("diagram") == "6_1^{0,1}");
  CHECK(j.at("biquandle") == fingerprint(m.base()));
  CHECK(j.at("module") == fingerprint(m));
  CHECK(j.at("counting") == 4);
  CHECK(j.at("polynomial") == nlohmann::json::parse("[[5,2],[25,2]]"));
  InvariantPolynomial back;
  for (const auto& term : j.at("polynomial")) back.add(term[0].get<Count>(), term[1].get<Count>());
  CHECK(back == r.polynomial);
}
