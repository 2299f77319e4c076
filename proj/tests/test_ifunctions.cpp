#include "support.hpp"
#include "tyurin/errors.hpp"
#include "tyurin/ifunctions.hpp"

#include <doctest.h>

using namespace tyurin;
using namespace tyurin::testing;

namespace {

AlgebraPtr h_only(int order) { return NilpotentAlgebra::make({{"H", order}}); }

} // namespace

TEST_CASE("quintic I-function coefficients") {
  auto alg = h_only(4);
  auto ctx = ctx_q({"q"}, 2, {}, {}, true, 3);
  auto I = I_q5(ctx, alg, "q");
  auto c1 = I.coefficient({{"q", 1}});
  CHECK(c1.extract({0}) == 120);
  CHECK(c1.extract({1}) == 770);
  CHECK(rising(CohomElement::generator(alg, "H") * BigRational(5), 5).extract({1}) == 1370);
  // prefactor exp(H log q) at q^0
  CHECK(I.coefficient({{"q", 0}, {"L_q", 1}}).extract({1}) == 1);
  CHECK(I.coefficient({{"q", 0}, {"L_q", 2}}).extract({2}) == BigRational(1, 2));
  CHECK(I.coefficient({{"q", 1}, {"L_q", 1}}).extract({1}) == 120);
}

TEST_CASE("unit part of I is the period") {
  auto alg = h_only(4);
  auto ctx = ctx_q({"q"}, 4, {}, {}, true, 3);
  auto plain = ctx_q({"q"}, 4);
  auto I = I_q5(ctx, alg, "q");
  Series unit(plain, nullptr);
  for (const auto& [e, c] : I.terms())
    if (e[1] == 0) unit.accumulate(Series::Exponent{e[0]}, c.extract({0}));
  CHECK(unit == q5_period(plain, "q"));
  auto k3 = I_k3(ctx, alg, "q");
  Series u3(plain, nullptr);
  for (const auto& [e, c] : k3.terms())
    if (e[1] == 0) u3.accumulate(Series::Exponent{e[0]}, c.extract({0}));
  CHECK(u3 == k3_period(plain, "q"));
}

TEST_CASE("stripped I-function at H = 0 is f0") {
  for (const auto& n : example_names()) {
    CAPTURE(n);
    auto f = make_frame(example(n), GlueCase::General, 3, 3);
    auto a = default_ialgebra(f.t, GlueCase::General);
    auto bar = gen_I_bar(IKind::X, f, a);
    std::vector<int> zero(a.source->generators().size(), 0);
    auto x = f0_X(f);
    auto scal = component(bar, zero);
    for (const auto& [e, c] : x.terms()) CHECK(scal.scalar(x.named(e)) == c.scalar_part());
    CHECK(scal.terms().size() == x.terms().size());
  }
}

TEST_CASE("default algebra sizing") {
  auto q = quintic_p4();
  auto a = default_ialgebra(q, GlueCase::General);
  CHECK(a.blowup == "P");
  REQUIRE(a.source->generators().size() == 2);
  CHECK(a.source->generators()[0].order == 3);
  CHECK(a.target->generators().size() == 1);
  auto b = default_ialgebra(q, GlueCase::Both);
  CHECK(b.source->generators()[1].order == 2);
  auto o = default_ialgebra(q, GlueCase::General, 3, {{"H", 4}});
  CHECK(o.source->generators()[0].order == 4);
  CHECK(max_log_degree(o.source) == 3 + o.source->generators()[1].order - 1);
}

TEST_CASE("prefactor forms agree after substitution") {
  for (const auto& n : example_names())
    for (auto c : {GlueCase::General, GlueCase::Both}) {
      CAPTURE(n);
      auto t = c == GlueCase::Both ? both_blowup_base(example(n)) : example(n);
      auto f = make_frame(t, c, 2, 2);
      auto a = default_ialgebra(f.t, c);
      auto l = c == GlueCase::Both ? IKind::TXBoth : IKind::X;
      auto r1 = c == GlueCase::Both ? IKind::TX1Both : IKind::X1;
      auto r2 = c == GlueCase::Both ? IKind::TX2Both : IKind::TX2;
      LinearForm lhs = prefactor_form(l, f, a), rhs = prefactor_form(r1, f, a);
      for (const auto& [k, v] : prefactor_form(IKind::X0, f, a))
        lhs[k] = lhs.count(k) ? lhs[k] + v : v;
      for (const auto& [k, v] : prefactor_form(r2, f, a))
        rhs[k] = rhs.count(k) ? rhs[k] + v : v;
      auto sl = subst_form(lhs, a, f.t), sr = subst_form(rhs, a, f.t);
      for (auto it = sl.begin(); it != sl.end();) it = it->second.is_zero() ? sl.erase(it) : std::next(it);
      for (auto it = sr.begin(); it != sr.end();) it = it->second.is_zero() ? sr.erase(it) : std::next(it);
      CHECK(sl == sr);
    }
}

TEST_CASE("I-function gluing on the examples") {
  for (const auto& n : example_names())
    for (auto c : {GlueCase::General, GlueCase::Both}) {
      CAPTURE(n);
      auto t = c == GlueCase::Both ? both_blowup_base(example(n)) : example(n);
      const int order = n == "p1_power(3)" ? 2 : 3;
      auto f = make_frame(t, c, order, order);
      CHECK(verify_I_gluing(f, default_ialgebra(f.t, c)).passed());
    }
}

TEST_CASE("closed-form I gluings") {
  CHECK(verify_conifold_I_gluing(3).passed());
  CHECK(verify_quintic_I_gluing(1, 3).passed());
  CHECK(verify_quintic_I_gluing(4, 3).passed());
  for (int b = 0; b <= 1; ++b)
    for (int a = 0; a <= 2; ++a) CHECK(coefficient_identity(a, b, 3).passed());
  CHECK(verify_I_dual_route(3).passed());
  CHECK_THROWS(coefficient_identity(3, 0, 2));
}

TEST_CASE("relative I0") {
  CHECK(verify_relative_I0(RelSide::X1, 3).passed());
  CHECK(verify_relative_I0(RelSide::X2, 3).passed());
  auto s = relative_I0_extract(RelSide::X1, 2);
  CHECK_FALSE(s.is_zero());
}

TEST_CASE("wrong generator image fails") {
  auto r = verify_quintic_I_gluing(1, 2, 2);
  CHECK(r.status == Status::Fail);
  CHECK(r.firstMismatch.has_value());
}

TEST_CASE("stripped I of X1 needs a wide window") {
  auto f = make_frame(quintic_p4(), GlueCase::General, 3, 3);
  f.window = {-2, 3};
  auto a = default_ialgebra(f.t, GlueCase::General);
  CHECK_THROWS_AS(gen_I_bar(IKind::X1, f, a), WindowTooSmall);
  CHECK_THROWS(gen_I_bar(IKind::TXBoth, f, a));
}
