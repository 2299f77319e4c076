#include "support.hpp"
#include "tyurin/errors.hpp"
#include "tyurin/ifunctions.hpp"
#include "tyurin/picard_fuchs.hpp"

#include <doctest.h>

using namespace tyurin;
using namespace tyurin::testing;

TEST_CASE("theta operator application") {
  auto ctx = ctx_q({"q"}, 6);
  auto th = ThetaOperator::theta("q");
  auto r = apply(th, mono(ctx, {{"q", 3}}));
  CHECK(r.value == mono(ctx, {{"q", 3}}, 3));
  CHECK(r.validDegree == 6);
  CHECK(apply(th.pow(3), Series::one(ctx, nullptr)).value.is_zero());
  auto shift = ThetaOperator::q("q", 2) * th;
  auto s = apply(shift, mono(ctx, {{"q", 1}}));
  CHECK(s.value == mono(ctx, {{"q", 3}}));
  CHECK(s.validDegree == 4);
  CHECK_THROWS_AS(apply(ThetaOperator::theta("z"), mono(ctx, {})), VarMismatch);
}

TEST_CASE("operator algebra") {
  auto th = ThetaOperator::theta("q"), q = ThetaOperator::q("q");
  // theta q = q (theta + 1)
  CHECK(th * q == q * (th + BigRational(1)));
  CHECK(q * q.pow(-1) == ThetaOperator(BigRational(1)));
  CHECK((th + q) - q == th);
  CHECK(q.q_degree() == 1);
  CHECK((q.pow(3) * th).q_degree() == 3);
  CHECK(q.q_variables() == std::vector<std::string>{"q"});
  CHECK(th.theta_variables() == std::vector<std::string>{"q"});
  CHECK(theta_symbol("q") == "th_q");
}

TEST_CASE("parser") {
  auto a = parse_operator("th_q^2 - q*(th_q + 1)");
  auto th = ThetaOperator::theta("q"), q = ThetaOperator::q("q");
  CHECK(a == th * th - q * (th + BigRational(1)));
  CHECK(parse_operator("θ^2 - 2t", "t") == parse_operator("theta_t theta_t - 2*t"));
  CHECK(parse_operator("δ(δ - 1/2)", "t") == parse_operator("th_t^2 - th_t/2"));
  CHECK(parse_operator("-(q)") == -q);
  for (const char* bad : {"th_q +", "(q", "q^x", "q / th_q", "q^(1/2)", "th", "@"}) {
    CAPTURE(std::string(bad));
    CHECK_THROWS_AS(parse_operator(bad), ParseError);
  }
}

TEST_CASE("printing round-trips") {
  for (const auto& op : {k3_operator("q"), catalogue(3).op, kodaira_j_operator(),
                         tq5_system().ops.front(), lg_tx2_system().ops.back()}) {
    CAPTURE(op.str());
    CHECK(parse_operator(op.str()) == op);
  }
}

TEST_CASE("catalogue") {
  auto e = catalogue(2);
  CHECK(e.holomorphic(0) == 1);
  CHECK(e.holomorphic(1) == 24);
  CHECK(catalogue(3).holomorphic(1) == 12);
  CHECK(catalogue(4).holomorphic(1) == 8);
  CHECK(catalogue(2).logCorrection(0) == 0);
  CHECK(catalogue(2).logCorrection(1) == 104);
  CHECK(catalogue(2).op == k3_operator("t"));
  CHECK_THROWS_AS(catalogue(5), UnknownN);
  for (int N : {2, 3, 4})
    for (bool lg : {false, true}) CHECK(verify_catalogue(N, lg, 8).passed());
}

TEST_CASE("annihilation") {
  CHECK(verify_k3_ode(8).passed());
  CHECK(verify_tq5_system(4).passed());
  CHECK(verify_lg_systems(4).passed());
  CHECK(verify_operator_identity().passed());
  CHECK(verify_kodaira_parse().passed());
  for (const char* k : {"k3", "tq5", "lg-tx1", "lg-tx2"}) {
    CAPTURE(k);
    CHECK(verify_I_annihilation(k, 4).passed());
  }
}

TEST_CASE("K3 period through the operator") {
  auto ctx = ctx_q({"q"}, 6);
  auto r = apply(k3_operator(), k3_period(ctx, "q"));
  CHECK(r.validDegree == 5);
  CHECK(r.value.is_zero());
}

TEST_CASE("valid range is enforced") {
  auto ctx = ctx_q({"t"}, 3);
  PFSystem sys{"k3", {k3_operator("t")}, {}};
  auto f = catalogue_holomorphic(catalogue(2), ctx);
  CHECK(verify_annihilation(sys, f, 2).passed());
  CHECK(verify_annihilation(sys, f, 3).status == Status::Skipped);
}

TEST_CASE("wrong solution is caught") {
  auto ctx = ctx_q({"t"}, 5);
  PFSystem sys{"N3", {catalogue(3).op}, {}};
  auto r = verify_annihilation(sys, catalogue_holomorphic(catalogue(2), ctx), 4);
  CHECK(r.status == Status::Fail);
  REQUIRE(r.firstMismatch);
  CHECK(r.firstMismatch->exponent.at("t") == 1);
}

TEST_CASE("LG systems only hold modulo P") {
  CHECK(verify_I_annihilation("lg-tx1", 3, 2).status == Status::Fail);
  CHECK(verify_I_annihilation("lg-tx2", 3, 2).status == Status::Fail);
}
