#include "support.hpp"
#include "tyurin/cohomology.hpp"
#include "tyurin/errors.hpp"
#include "tyurin/periods.hpp"

#include <doctest.h>

using namespace tyurin;
using namespace tyurin::testing;

TEST_CASE("add") {
  auto c = ctx_q({"q"}, 4);
  CHECK(add(add(mono(c, {}), mono(c, {{"q", 1}})), add(mono(c, {}), mono(c, {{"q", 1}}, -1))) ==
        mono(c, {}, 2));
  auto f = k3_period(c, "q");
  CHECK(add(f, Series(c, nullptr)) == f);
  CHECK(add(mono(c, {{"q", 1}}, 24), mono(c, {{"q", 1}}, 96)) == mono(c, {{"q", 1}}, 120));
}

TEST_CASE("mul") {
  auto c = ctx_q({"q"}, 4, {"y"}, {-5, 5});
  auto one_plus = add(mono(c, {}), mono(c, {{"y", 1}}));
  auto one_minus = sub(mono(c, {}), mono(c, {{"y", 1}}));
  CHECK(mul(one_plus, one_minus) == sub(mono(c, {}), mono(c, {{"y", 2}})));
  CHECK(mul(mono(c, {{"y", -1}}), mono(c, {{"y", 1}})) == mono(c, {}));
  auto geo = expand_neg_binomial(c, nullptr, {{"y", 1}}, 0);
  CHECK(mul(geo, one_minus) == mono(c, {}));  // y^6 falls outside the window
}

TEST_CASE("mul respects the total degree cap") {
  auto c = ctx_q({"q", "p"}, 2);
  auto a = add(mono(c, {}), mono(c, {{"q", 1}}));
  auto b = add(mono(c, {}), mono(c, {{"p", 2}}));
  auto r = mul(a, b);
  CHECK(r.scalar({{"q", 1}, {"p", 2}}) == 0);
  CHECK(r.scalar({{"p", 2}}) == 1);
}

TEST_CASE("hadamard_q") {
  auto c = ctx_q({"q"}, 3);
  auto a = add(mono(c, {}), mono(c, {{"q", 1}}, 2));
  auto b = add(mono(c, {}), mono(c, {{"q", 1}}, 3));
  CHECK(hadamard_q(a, b, {"q"}) == add(mono(c, {}), mono(c, {{"q", 1}}, 6)));
  Series ones(c, nullptr);
  for (int d = 0; d <= 3; ++d) ones.accumulate(ones.exponent({{"q", d}}), 1);
  auto f = k3_period(c, "q");
  CHECK(hadamard_q(f, ones, {"q"}) == f);
  auto h = hadamard_q(q5_period(c, "q"), k3_period(c, "q"), {"q"});
  CHECK(h.scalar({{"q", 1}}) == 2880);
  CHECK_THROWS_AS(hadamard_q(f, f, {}), VarMismatch);
}

TEST_CASE("constant_term_y") {
  auto c = ctx_q({"q", "q0"}, 3, {"y"}, {-3, 3});
  auto s = add(add(mono(c, {{"y", -2}}, 3), mono(c, {}, 5)), mono(c, {{"y", 1}}, 7));
  auto ct = constant_term_y(s, "y");
  CHECK(ct.terms().size() == 1);
  CHECK(ct.scalar({}) == 5);
  auto p = mul(mono(c, {{"q", 1}, {"y", -1}}), mono(c, {{"q0", 1}, {"y", 1}}));
  CHECK(constant_term_y(p, "y").scalar({{"q", 1}, {"q0", 1}}) == 1);
  auto it = quintic_iterative_period(3);
  CHECK(it.scalar({{"psi", 1}}) == 120);
  CHECK_THROWS_AS(constant_term_y(s, "q"), VarMismatch);
}

TEST_CASE("expand_neg_binomial") {
  auto c = ctx_q({"q0"}, 4, {"y"}, {-6, 6});
  auto s1 = expand_neg_binomial(c, nullptr, {{"y", 1}}, 1);
  CHECK(s1.scalar({{"y", 3}}) == 4);
  auto s0 = expand_neg_binomial(c, nullptr, {{"y", 1}}, 0);
  for (int d = 0; d <= 6; ++d) CHECK(s0.scalar({{"y", d}}) == 1);
  auto s3 = expand_neg_binomial(c, nullptr, {{"q0", 1}, {"y", -1}}, 3);
  CHECK(s3.scalar({{"q0", 2}, {"y", -2}}) == 10);
}

TEST_CASE("substitute") {
  TruncationSpec tr;
  tr.maxTotalDegQ = 4;
  tr.windows["y"] = {-3, 3};
  auto src = make_context(VarTable({"q"}, {"y"}), tr);
  TruncationSpec tt;
  tt.maxTotalDegQ = 4;
  tt.windows["y2"] = {-3, 3};
  auto dst = make_context(VarTable({"q0"}, {"y2"}), tt);
  auto s = mono(src, {{"y", 2}});
  auto r = substitute(s, {{"y", MonomialImage{1, {{"q0", 1}, {"y2", -1}}}}}, dst);
  CHECK(r == mono(dst, {{"q0", 2}, {"y2", -2}}));
  auto f = k3_period(src, "q");
  CHECK(substitute(f, {}, src) == f);
}

TEST_CASE("substitute reproduces the glued tX2 series") {
  for (int e : {0, 1, 4}) {
    CAPTURE(e);
    TruncationSpec tr;
    tr.maxTotalDegQ = 3;
    tr.windows["y2"] = {-20, 20};
    auto orig = make_context(VarTable({"q12", "q02"}, {"y2"}), tr);
    TruncationSpec tg;
    tg.maxTotalDegQ = 3;
    tg.windows["y2"] = {-20, 20};
    auto glued = make_context(VarTable({"q1", "y"}, {"y2"}), tg);
    auto moved = tx2_to_glued(tx2_original(orig, e), e, glued);
    // after the change of variables y2 drops out and the glued series is what remains
    for (const auto& [ex, c] : moved.terms()) CHECK(ex[2] == 0);
    Series direct = e == 0 ? conifold_tx2_period(glued, "q1", "y")
                           : quintic_tx2_period(glued, e, "q1", "y");
    CHECK(moved == direct);
  }
}

TEST_CASE("theta") {
  auto c = ctx_q({"q"}, 4, {}, {}, true, 3);
  CHECK(theta(mono(c, {{"q", 3}}), "q") == mono(c, {{"q", 3}}, 3));
  CHECK(theta(mono(c, {{"L_q", 1}}), "q") == mono(c, {}));
  auto alg = NilpotentAlgebra::make({{"H", 3}});
  auto H = CohomElement::generator(alg, "H");
  auto hl = scale(Series::monomial(c, alg, {{"L_q", 1}}), H);
  auto qh = exp_nilpotent(hl);
  CHECK(theta(qh, "q") == scale(qh, H));
}

TEST_CASE("cohomology ring") {
  auto alg = NilpotentAlgebra::make({{"H", 3}, {"P", 2}});
  auto H = CohomElement::generator(alg, "H"), P = CohomElement::generator(alg, "P");
  CHECK(cmul(H, cmul(H, H)).is_zero());
  auto x = H * BigRational(4) + P;
  auto sq = cmul(x, x);
  CHECK(sq == cmul(H, H) * BigRational(16) + cmul(H, P) * BigRational(8));
  CHECK(sq.extract({2, 0}) == 16);
  CHECK(H.extract({0, 0}) == 0);
  CHECK(cmul(CohomElement(alg, 1), x) == x);
}

TEST_CASE("subst_generator") {
  auto alg = NilpotentAlgebra::make({{"H", 3}, {"P", 3}});
  auto H = CohomElement::generator(alg, "H"), P = CohomElement::generator(alg, "P");
  auto tgt = remove_generator(alg, "P");
  auto Ht = CohomElement::generator(tgt, "H");
  auto x = H * BigRational(4) + P;
  CHECK(subst_generator(x, "P", {{"H", 1}}, tgt) == Ht * BigRational(5));
  CHECK(subst_generator(x, "P", {{"H", 4}}, tgt) == Ht * BigRational(8));
  CHECK(subst_generator(cmul(H, P) + H, "P", {}, tgt) == Ht);
}

TEST_CASE("context errors") {
  auto a = ctx_q({"q"}, 3), b = ctx_q({"q"}, 4), c = ctx_q({"p"}, 3);
  CHECK_THROWS_AS(add(mono(a, {}), mono(b, {})), TruncMismatch);
  CHECK_THROWS_AS(add(mono(a, {}), mono(c, {})), VarMismatch);
  auto alg = NilpotentAlgebra::make({{"H", 3}});
  CHECK_THROWS_AS(add(mono(a, {}), mono(a, {}, 1, alg)), AlgebraMismatch);
  CHECK_THROWS_AS(CohomElement::generator(alg, "P"), UnknownGenerator);
}
