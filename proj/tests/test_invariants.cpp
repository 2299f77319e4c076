#include "tyurin/errors.hpp"
#include "tyurin/invariants.hpp"

#include <doctest.h>

using namespace tyurin;

namespace {

RationalFunc v(const std::string& n) { return RationalFunc::var(n); }
RationalFunc c(long n) { return RationalFunc(BigRational(n)); }

} // namespace

TEST_CASE("rational function arithmetic") {
  auto x = v("x"), y = v("y");
  CHECK((x * y) / (y * y) == x / y);
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK(x / y + y / x == (x * x + y * y) / (x * y));
  CHECK(x.pow(-2) * x.pow(3) == x);
  CHECK_FALSE(x / y == y / x);
  CHECK_THROWS_AS(RationalFunc(MPoly::var("x"), MPoly(BigRational(0))), DegenerateParameters);
}

TEST_CASE("substitution is a homomorphism") {
  auto x = v("x"), y = v("y");
  Identification id{{"x", (y + c(1)) / (y - c(2))}, {"y", y * y}};
  auto f = (x * x + c(3)) / (x - y), g = x * y + c(1);
  CHECK(substitute(f * g, id) == substitute(f, id) * substitute(g, id));
  CHECK(substitute(f + g, id) == substitute(f, id) + substitute(g, id));
  CHECK(substitute(f / g, id) == substitute(f, id) / substitute(g, id));
  // simultaneous, not sequential
  Identification swap{{"x", y}, {"y", x}};
  CHECK(substitute(x / y, swap) == y / x);
}

TEST_CASE("monomial ratio") {
  auto x = v("x"), y = v("y");
  auto r = monomial_ratio(c(3) * x * x / (c(1) - y), x / (c(1) - y));
  REQUIRE(r);
  CHECK(r->second == 3);
  CHECK(r->first.exp(intern("x")) == 1);
  CHECK_FALSE(monomial_ratio(x + y, x));
}

TEST_CASE("quintic invariants") {
  auto s = build_invariants(quintic_p4(), GlueCase::General);
  REQUIRE(s.lambda.size() == 1);
  auto y = v(s.y), q = v("q1");
  CHECK(s.lambda[0] == q / (y.pow(4) * (c(1) - y)));
  // y -> 1 - y gives the form q/(y (1-y)^4)
  auto flipped = substitute(s.lambda[0], {{s.y, c(1) - y}});
  CHECK(flipped == q / (y * (c(1) - y).pow(4)));
}

TEST_CASE("conifold invariants") {
  auto s = build_invariants(quintic_p4(), GlueCase::Both);
  auto y = v(s.y), q1 = v("q1"), q0 = v(s.q0);
  CHECK(s.lambda[0] == y.pow(4) * q1 / ((c(1) - y) * (y - q0).pow(4)));
}

TEST_CASE("product over projective space") {
  auto s = build_invariants(pn_x_p1(2, 3), GlueCase::General);
  REQUIRE(s.lambda.size() == 2);
  auto y = v(s.y);
  CHECK(s.lambda[0] == v("q1") / (c(1) - y).pow(3));
  CHECK(s.lambda[1] == v("q0") / y);
}

TEST_CASE("product relations hold") {
  for (const auto& n : example_names()) {
    CAPTURE(n);
    CHECK(check_product_relation(example(n), GlueCase::General).passed());
    CHECK(check_product_relation(both_blowup_base(example(n)), GlueCase::Both).passed());
  }
  CHECK(check_product_relation(swap_refinement(quintic_p4()), GlueCase::General).passed());
}

TEST_CASE("perturbed product relation fails") {
  auto r = check_product_relation(quintic_p4(), GlueCase::General, true);
  CHECK(r.status == Status::Fail);
  CHECK(r.firstMismatch.has_value());
}

TEST_CASE("hurwitz gluing") {
  auto h = hurwitz_glue({1}, {4});
  CHECK(h.limit == h.limitExpected);
  auto yt = v("yt"), z1 = v("z1"), z2 = v("z2");
  CHECK(h.zForm == (z1 * yt + z2) / (yt * (yt - c(1)).pow(4)));
  CHECK(verify_hurwitz({1}, {4}).passed());
  CHECK(verify_hurwitz({2, 1}, {1, 2}).passed());
  CHECK(verify_hurwitz({1, 1}, {1}, HurwitzVersion::Original).passed());
  CHECK(verify_hurwitz_all(5).passed());
  CHECK(verify_hurwitz_all(4, HurwitzVersion::Original).passed());
  CHECK(verify_quintic_limit().passed());
  CHECK(verify_conifold_rewrite().passed());
}

TEST_CASE("literal sign fails when a_1 + ... + a_{n-1} is odd") {
  CHECK(verify_hurwitz({1, 1}, {1}, HurwitzVersion::OriginalLiteral).status == Status::Fail);
  CHECK(verify_hurwitz({1, 2}, {2}, HurwitzVersion::OriginalLiteral).status == Status::Fail);
  CHECK(verify_hurwitz({2, 1}, {2}, HurwitzVersion::OriginalLiteral).passed());
  CHECK(verify_hurwitz({1, 1, 1}, {1}, HurwitzVersion::OriginalLiteral).passed());
}

TEST_CASE("LG normal forms") {
  for (auto side : {LGSide::X1, LGSide::X2})
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(n);
      CHECK(verify_lg_normal_form(side, n).passed());
    }
  auto nf = lg_normal_form(LGSide::X1, 2);
  REQUIRE(nf.target.size() == 2);
  CHECK(nf.target[0] == v("z1") + v("x1") + v("x2"));
}
