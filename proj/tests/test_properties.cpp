#include "support.hpp"
#include "tyurin/ifunctions.hpp"
#include "tyurin/periods.hpp"
#include "tyurin/registry.hpp"

#include <doctest.h>

using namespace tyurin;
using namespace tyurin::testing;

namespace {

constexpr std::uint64_t kSeed = 0x7f4a7c15u;
constexpr int kTrials = 25;

AlgebraPtr hp_algebra() { return NilpotentAlgebra::make({{"H", 3}, {"P", 2}}); }

CohomElement random_element(std::mt19937_64& rng, AlgebraPtr alg) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::vector<CohomElement::Term> ts;
  for (std::uint32_t i = 0; i < alg->basis_size(); ++i) {
    BigRational c(coef(rng), 1 + (i % 3));
    c.canonicalize();
    ts.emplace_back(i, c);
  }
  return CohomElement::from_terms(alg, ts);
}

Series ones(ContextPtr ctx, const std::vector<std::string>& qs, int order) {
  Series s(ctx, nullptr);
  for (const auto& d : degree_box(static_cast<int>(qs.size()), order)) {
    std::map<std::string, int> e;
    for (std::size_t i = 0; i < qs.size(); ++i) e[qs[i]] = d[i];
    s.accumulate(s.exponent(e), BigRational(1));
  }
  return s;
}

} // namespace

TEST_CASE("series ring axioms") {
  std::mt19937_64 rng(kSeed);
  auto alg = hp_algebra();
  auto ctx = ctx_q({"q1", "q2"}, 4, {"y"}, {-3, 3});
  for (int k = 0; k < kTrials; ++k) {
    auto a = random_series(rng, ctx, 6, alg), b = random_series(rng, ctx, 6, alg),
         c = random_series(rng, ctx, 6, alg);
    CHECK(add(a, b) == add(b, a));
    CHECK(mul(a, b) == mul(b, a));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    CHECK(sub(a, a).is_zero());
    CHECK(mul(a, Series::one(ctx, alg)) == a);
  }
}

TEST_CASE("hadamard product") {
  std::mt19937_64 rng(kSeed + 1);
  auto ctx = ctx_q({"q1", "q2"}, 4, {"y"}, {-2, 2});
  const std::vector<std::string> qs{"q1", "q2"};
  auto one = ones(ctx, qs, 4);
  for (int k = 0; k < kTrials; ++k) {
    auto a = random_series(rng, ctx, 6), b = random_series(rng, ctx, 6), c = random_series(rng, ctx, 6);
    CHECK(hadamard_q(a, b, qs) == hadamard_q(b, a, qs));
    CHECK(hadamard_q(hadamard_q(a, b, qs), c, qs) == hadamard_q(a, hadamard_q(b, c, qs), qs));
    CHECK(hadamard_q(a, one, qs) == a);
    CHECK(hadamard_q(add(a, b), c, qs) == add(hadamard_q(a, c, qs), hadamard_q(b, c, qs)));
  }
}

TEST_CASE("theta is a derivation") {
  std::mt19937_64 rng(kSeed + 2);
  auto plain = ctx_q({"q", "x"}, 5, {"y"}, {-2, 2});
  auto logs = ctx_q({"q", "x"}, 5, {"y"}, {-2, 2}, true, 6);
  for (const auto& ctx : {plain, logs})
    for (int k = 0; k < kTrials; ++k)
      for (const char* v : {"q", "y"}) {
        auto a = random_series(rng, ctx, 5), b = random_series(rng, ctx, 5);
        CHECK(theta(mul(a, b), v) == add(mul(theta(a, v), b), mul(a, theta(b, v))));
        CHECK(theta(add(a, b), v) == add(theta(a, v), theta(b, v)));
      }
}

TEST_CASE("constant term of a product against a double loop") {
  std::mt19937_64 rng(kSeed + 3);
  auto ctx = ctx_q({"q"}, 4, {"y"}, {-3, 3});
  auto out = ctx_q({"q"}, 4);
  for (int k = 0; k < kTrials; ++k) {
    auto a = random_series(rng, ctx, 8), b = random_series(rng, ctx, 8);
    Series brute(out, nullptr);
    for (const auto& [ea, ca] : a.terms())
      for (const auto& [eb, cb] : b.terms())
        if (ea[1] + eb[1] == 0) brute.accumulate(Series::Exponent{ea[0] + eb[0]}, ca.scalar_part() * cb.scalar_part());
    auto got = constant_term_y(mul(a, b), "y");
    CHECK(got == brute);
  }
}

TEST_CASE("negative binomial inverts a power") {
  auto ctx = ctx_q({"q"}, 8, {"y"}, {-8, 8});
  for (int k = 0; k <= 4; ++k)
    for (const auto& u : std::vector<std::map<std::string, int>>{{{"q", 1}}, {{"q", 1}, {"y", -1}}, {{"q", 2}, {"y", 1}}}) {
      CAPTURE(k);
      auto s = expand_neg_binomial(ctx, nullptr, u, k, BigRational(3, 2));
      auto base = sub(Series::one(ctx, nullptr), mono(ctx, u, BigRational(3, 2)));
      auto p = Series::one(ctx, nullptr);
      for (int i = 0; i <= k; ++i) p = mul(p, base);
      CHECK(mul(s, p) == Series::one(ctx, nullptr));
    }
}

TEST_CASE("nilpotent algebra") {
  std::mt19937_64 rng(kSeed + 4);
  auto alg = hp_algebra();
  for (int k = 0; k < kTrials; ++k) {
    auto a = random_element(rng, alg), b = random_element(rng, alg), c = random_element(rng, alg);
    CHECK(cmul(a, b) == cmul(b, a));
    CHECK(cmul(cmul(a, b), c) == cmul(a, cmul(b, c)));
    CHECK(cmul(a, b + c) == cmul(a, b) + cmul(a, c));
    auto ab = cmul(a, b);
    for (std::uint32_t i = 0; i < alg->basis_size(); ++i) {
      auto e = alg->digits(i);
      BigRational sum = 0;
      for (std::uint32_t j = 0; j < alg->basis_size(); ++j) {
        auto ej = alg->digits(j);
        std::vector<int> rest(e.size());
        bool ok = true;
        for (std::size_t g = 0; g < e.size(); ++g) ok = ok && (rest[g] = e[g] - ej[g]) >= 0;
        if (ok) sum += a.extract(ej) * b.extract(rest);
      }
      CHECK(ab.extract(e) == sum);
    }
    if (a.scalar_part() != 0) CHECK(cmul(a, a.inverse()) == CohomElement(alg, BigRational(1)));
  }
}

TEST_CASE("generator substitution is a ring map when sized") {
  std::mt19937_64 rng(kSeed + 5);
  auto alg = NilpotentAlgebra::make({{"H", 4}, {"P", 4}});
  const std::vector<std::pair<std::string, BigRational>> img{{"H", BigRational(2)}};
  for (int k = 0; k < kTrials; ++k) {
    auto a = random_element(rng, alg), b = random_element(rng, alg);
    CHECK(subst_generator(cmul(a, b), "P", img) ==
          cmul(subst_generator(a, "P", img), subst_generator(b, "P", img)));
  }
}

TEST_CASE("monomial substitution is a ring map") {
  std::mt19937_64 rng(kSeed + 6);
  auto src = ctx_q({"q"}, 4, {"y"}, {-2, 2});
  auto dst = ctx_q({"q", "x"}, 4, {"y"}, {-6, 6});
  std::map<std::string, MonomialImage> img{{"q", {BigRational(2), {{"q", 1}, {"x", 1}, {"y", -1}}}},
                                           {"y", {BigRational(1), {{"y", 1}}}}};
  for (int k = 0; k < kTrials; ++k) {
    auto a = random_series(rng, src, 5), b = random_series(rng, src, 5);
    auto lhs = substitute(mul(a, b), img, dst), rhs = mul(substitute(a, img, dst), substitute(b, img, dst));
    CHECK(first_difference(lhs, rhs) == std::nullopt);
  }
}

TEST_CASE("raising the order extends the lower series") {
  for (const auto& n : {"quintic_p4", "p1_power(2)", "pn_x_p1(2,3)"}) {
    CAPTURE(n);
    auto lo = make_frame(example(n), GlueCase::General, 2, 2), hi = make_frame(example(n), GlueCase::General, 3, 3);
    hi.window = lo.window = window_bound(example(n), GlueCase::General, 3, 3);
    auto a = f0_X1(lo), b = retruncate(f0_X1(hi), a.context());
    CHECK(a == b);
    auto ia = default_ialgebra(lo.t, GlueCase::General);
    auto ba = gen_I_bar(IKind::X, lo, ia), bb = retruncate(gen_I_bar(IKind::X, hi, ia), ba.context());
    CHECK(ba == bb);
  }
}

TEST_CASE("negative controls fail") {
  RunConfig c;
  c.checks = {"negative-controls"};
  c.qOrder = 2;
  auto rep = run(c);
  REQUIRE(rep.results.size() == 6);
  for (const auto& r : rep.results) {
    CAPTURE(r.checkId);
    CHECK(r.status == Status::Fail);
    CHECK(r.firstMismatch.has_value());
  }
}
