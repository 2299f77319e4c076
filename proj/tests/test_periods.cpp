#include "support.hpp"
#include "tyurin/errors.hpp"
#include "tyurin/periods.hpp"
#include "tyurin/toric.hpp"

#include <doctest.h>

#include <algorithm>

using namespace tyurin;
using namespace tyurin::testing;

namespace {

BigRational fr(std::vector<long> num, std::vector<long> den) {
  BigRational r = 1;
  for (long n : num) r *= BigRational(factorial(n));
  for (long n : den) r /= BigRational(factorial(n));
  return r;
}

} // namespace

TEST_CASE("validate") {
  for (const auto& n : example_names()) {
    CAPTURE(n);
    auto t = example(n);
    CHECK(validate(t).empty());
    ClassVec sum(static_cast<std::size_t>(t.r), 0);
    for (int l = 0; l <= t.s(); ++l) sum = add_classes(sum, t.rho(l));
    CHECK(sum == t.anticanonical());
  }
  auto t = quintic_p4();
  t.groups = {{0, 1, 2, 3}};
  t.s2 = {0, 1, 2};
  auto v = validate(t);
  CHECK(std::any_of(v.begin(), v.end(), [](const Violation& x) {
    return x.message.find("uncovered divisor") != std::string::npos;
  }));
  auto u = quintic_p4();
  u.s1.clear();
  CHECK_FALSE(validate(u).empty());
}

TEST_CASE("examples") {
  auto q = example("quintic_p4");
  CHECK(q.r == 1);
  CHECK(q.m() == 5);
  CHECK(q.rho01() == ClassVec{1});
  CHECK(q.rho02() == ClassVec{4});
  CHECK(q.dimension() == 3);
  auto p = example("p1_power(2)");
  CHECK(p.r == 3);
  auto pn = example("pn_x_p1(2,3)");
  CHECK(pn.r == 2);
  CHECK(pn.dimension() >= 1);
  CHECK_THROWS_AS(example("nope"), UnknownExample);
}

TEST_CASE("degree box is graded lexicographic") {
  auto b = degree_box(2, 2);
  REQUIRE(b.size() == 6);
  CHECK(b.front() == DegreeVec{0, 0});
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i - 1][0] + b[i - 1][1] <= b[i][0] + b[i][1]);
}

TEST_CASE("window bound") {
  auto w = window_bound(quintic_p4(), GlueCase::General, 4, 4);
  CHECK(w.lo == -16);
  CHECK(w.hi == 16);
  CHECK(window_bound(p1_power(2), GlueCase::General, 3, 3).lo == -3);
  auto b = window_bound(quintic_p4(), GlueCase::Both, 4, 2);
  CHECK(b.lo == -2);
}

TEST_CASE("closed-form coefficients") {
  auto q = quintic_p4();
  auto f = make_frame(q, GlueCase::General, 4);
  auto x0 = f0_X0(f), x = f0_X(f), x1 = f0_X1(f), t2 = f0_tX2(f);
  CHECK(x0.scalar({}) == 1);
  CHECK(x0.scalar({{"q1", 1}}) == 24);
  CHECK(x.scalar({{"q1", 1}}) == 120);
  CHECK(x.scalar({}) == 1);
  for (int d = 0; d <= 4; ++d) {
    CHECK(x.scalar({{"q1", d}}) == fr({5L * d}, {d, d, d, d, d}));
    CHECK(x0.scalar({{"q1", d}}) == fr({4L * d}, {d, d, d, d}));
  }
  CHECK(x1.scalar({{"q1", 1}, {"y", -4}}) == 24);
  CHECK(x1.scalar({}) == 1);
  auto sw = make_frame(swap_refinement(q), GlueCase::General, 4);
  CHECK(f0_X1(sw).scalar({{"q1", 1}, {"y", -1}}) == 24);
  CHECK(f0_tX2(sw).scalar({{"y", 1}}) == 1);
  CHECK(t2.scalar({}) == 1);

  auto both = make_frame(q, GlueCase::Both, 4, 4);
  auto fam = f0_both_family(both);
  CHECK(fam.tX.scalar({{"q1", 1}, {"q0", 1}}) == 240);
  CHECK(fam.tX1.scalar({{"q1", 1}, {"q0", 1}, {"y", -1}}) == 120);
  CHECK(fam.tX2.scalar({{"q1", 1}, {"y", 1}}) == 48);
  CHECK(fam.tX.scalar({}) == 1);
  CHECK(fam.tX1.scalar({}) == 1);
  CHECK(fam.tX2.scalar({}) == 1);
}

TEST_CASE("first block") {
  auto f = make_frame(p1_power(2), GlueCase::General, 3);
  CHECK(f0_X(f).scalar({{"q0", 1}}) == 1);
  auto b = make_frame(both_blowup_base(p1_power(2)), GlueCase::Both, 3, 3);
  CHECK(f0_X0(b).scalar({{"q1", 1}, {"q2", 1}}) == 4);
  // symmetric in (d0, d1, d2)
  auto x = f0_X(f);
  CHECK(x.scalar({{"q0", 2}, {"q1", 1}}) == x.scalar({{"q1", 2}, {"q2", 1}}));
  CHECK(x.scalar({{"q0", 1}, {"q2", 2}}) == x.scalar({{"q2", 1}, {"q1", 2}}));
}

TEST_CASE("period gluing") {
  for (const auto& n : example_names())
    for (auto c : {GlueCase::General, GlueCase::Both}) {
      CAPTURE(n);
      auto t = c == GlueCase::Both ? both_blowup_base(example(n)) : example(n);
      auto f = make_frame(t, c, 3, 3);
      CHECK(verify_period_gluing(f).passed());
      CHECK(verify_reconstruction(f).passed());
    }
  CHECK(verify_period_gluing(make_frame(swap_refinement(quintic_p4()), GlueCase::General, 4)).passed());
  CHECK(verify_conifold_period_gluing(4).passed());
  CHECK(verify_quintic_period_gluing(1, 4).passed());
  CHECK(verify_quintic_period_gluing(4, 4).passed());
  CHECK(verify_quintic_iterative(6).passed());
  CHECK(verify_first_block(2, 3).passed());
}

TEST_CASE("reconstruction matches the quintic closed form") {
  auto f = make_frame(quintic_p4(), GlueCase::General, 4);
  auto lhs = constant_term_y(pullback_scaled(f), f.y);
  CHECK(lhs == q5_period(lhs.context(), "q1"));
}

TEST_CASE("corrupted coefficient is located") {
  auto f = make_frame(quintic_p4(), GlueCase::General, 4);
  auto lhs = hadamard_q(f0_X(f), f0_X0(f), {"q1"});
  auto bad = add(lhs, mono(lhs.context(), {{"q1", 3}}));
  auto r = compare_series("x", bad, lhs, 4);
  REQUIRE(r.status == Status::Fail);
  REQUIRE(r.firstMismatch);
  CHECK(r.firstMismatch->exponent.at("q1") == 3);
}

TEST_CASE("too small a window is reported") {
  auto f = make_frame(quintic_p4(), GlueCase::General, 4);
  f.window = {-4, 4};
  CHECK_THROWS_AS(f0_X1(f), WindowTooSmall);
}
