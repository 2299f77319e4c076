#include "tyurin/periods.hpp"

#include "tyurin/errors.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace tyurin {

std::string to_string(GlueCase c) { return c == GlueCase::General ? "general" : "both"; }

namespace {

int max_of(const std::vector<int>& v) {
  int m = 0;
  for (int x : v) m = std::max(m, x);
  return m;
}

bool taken(const ToricCI& t, const std::string& n) {
  return std::find(t.qNames.begin(), t.qNames.end(), n) != t.qNames.end() ||
         std::find(t.pNames.begin(), t.pNames.end(), n) != t.pNames.end();
}

BigRational fact_ratio(const std::vector<long>& num, const std::vector<long>& den) {
  BigInt n = 1, d = 1;
  for (long k : num) n *= factorial(k);
  for (long k : den) d *= factorial(k);
  BigRational r(n, d);
  r.canonicalize();
  return r;
}

struct Derived {
  std::vector<ClassVec> D, rho;
  ClassVec r01, r02;
  explicit Derived(const ToricCI& t) {
    for (int j = 0; j < t.m(); ++j) D.push_back(t.divisor(j));
    for (int l = 0; l <= t.s(); ++l) rho.push_back(t.rho(l));
    r01 = t.rho01();
    r02 = t.rho02();
  }
  // prod_{l>=1} <rho_l,d>! / prod_j <D_j,d>!
  void common(const DegreeVec& d, std::vector<long>& num, std::vector<long>& den) const {
    for (std::size_t l = 1; l < rho.size(); ++l) num.push_back(pairing(rho[l], d));
    for (const auto& c : D) den.push_back(pairing(c, d));
  }
};

std::map<std::string, int> qexps(const std::vector<std::string>& names, const DegreeVec& d) {
  std::map<std::string, int> m;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (d[i] != 0) m[names[i]] = d[i];
  return m;
}

int loop_bound(const ContextPtr& ctx) {
  int b = ctx->trunc().maxTotalDegQ;
  for (const auto& [n, w] : ctx->trunc().windows) b = std::max({b, w.hi, -w.lo});
  return b;
}

// accumulates fn(d1, d0) over a two-index lattice large enough for ctx
void lattice2(Series& s, const std::function<void(Series&, int, int)>& fn) {
  const int b = loop_bound(s.context());
  for (int d1 = 0; d1 <= s.trunc().maxTotalDegQ; ++d1)
    for (int d0 = 0; d0 <= b; ++d0) fn(s, d1, d0);
}

} // namespace

Window window_bound(const ToricCI& t, GlueCase c, int qOrder, int q0Order) {
  const int ma = max_of(t.a()), me = max_of(t.e());
  Window w;
  if (c == GlueCase::General) {
    w.lo = -qOrder * me;
    w.hi = std::max(qOrder * ma + qOrder, qOrder * me);
  } else {
    w.lo = -q0Order;
    w.hi = std::max(q0Order, qOrder * ma + qOrder);
  }
  return w;
}

std::vector<std::string> Frame::qVars() const {
  auto v = t.qNames;
  if (kase == GlueCase::Both) v.push_back(q0);
  return v;
}

TruncationSpec Frame::trunc(bool withY, int maxLogDeg) const {
  TruncationSpec s;
  s.maxTotalDegQ = qOrder;
  if (kase == GlueCase::Both) s.degCaps[q0] = q0Order;
  if (withY) s.windows[y] = window;
  s.maxLogDeg = maxLogDeg;
  return s;
}

ContextPtr Frame::ctx(bool withY, bool logs, int maxLogDeg) const {
  std::vector<std::string> lau;
  if (withY) lau.push_back(y);
  VarTable vt = logs ? VarTable::with_logs(qVars(), lau) : VarTable(qVars(), lau);
  return make_context(std::move(vt), trunc(withY, logs ? maxLogDeg : 0));
}

Frame make_frame(const ToricCI& t, GlueCase c, int qOrder, int q0Order) {
  if (qOrder < 0 || q0Order < 0) throw std::invalid_argument("orders must be >= 0");
  Frame f;
  f.t = t;
  f.kase = c;
  f.qOrder = qOrder;
  f.q0Order = q0Order;
  f.q0 = taken(t, "q0") ? "qb" : "q0";
  f.y = taken(t, "y") ? "yb" : "y";
  f.window = window_bound(t, c, qOrder, q0Order);
  return f;
}

BigRational coeff_X(const ToricCI& t, const DegreeVec& d) {
  Derived g(t);
  std::vector<long> num, den;
  g.common(d, num, den);
  num.push_back(pairing(g.rho[0], d));
  return fact_ratio(num, den);
}

BigRational coeff_X0(const ToricCI& t, const DegreeVec& d) {
  Derived g(t);
  std::vector<long> num, den;
  g.common(d, num, den);
  num.push_back(pairing(g.r01, d));
  num.push_back(pairing(g.r02, d));
  return fact_ratio(num, den);
}

BigRational coeff_tX2(const ToricCI& t, const DegreeVec& d, int d0) {
  Derived g(t);
  std::vector<long> num, den;
  g.common(d, num, den);
  num.push_back(d0 + pairing(g.r01, d));
  num.push_back(pairing(g.r02, d));
  den.push_back(d0);
  return fact_ratio(num, den);
}

BigRational coeff_both_tX(const ToricCI& t, const DegreeVec& d, int d0) {
  Derived g(t);
  std::vector<long> num, den;
  g.common(d, num, den);
  num.push_back(d0 + pairing(g.r01, d));
  num.push_back(d0 + pairing(g.r02, d));
  den.push_back(d0);
  den.push_back(d0);
  return fact_ratio(num, den);
}

BigRational coeff_both_tX1(const ToricCI& t, const DegreeVec& d, int d0) {
  Derived g(t);
  std::vector<long> num, den;
  g.common(d, num, den);
  num.push_back(pairing(g.r01, d));
  num.push_back(d0 + pairing(g.r02, d));
  den.push_back(d0);
  return fact_ratio(num, den);
}

BigRational coeff_both_tX2(const ToricCI& t, const DegreeVec& d, int d0) {
  Derived g(t);
  std::vector<long> num, den;
  g.common(d, num, den);
  num.push_back(d0 + pairing(g.r01, d));
  num.push_back(pairing(g.r02, d));
  den.push_back(d0);
  return fact_ratio(num, den);
}

Series f0_X(const Frame& f) {
  Series s(f.ctx(false), nullptr);
  for (const auto& d : degree_box(f.t.r, f.qOrder))
    s.accumulate(s.exponent(qexps(f.t.qNames, d)), coeff_X(f.t, d));
  return s;
}

Series f0_X0(const Frame& f) {
  Series s(f.ctx(false), nullptr);
  for (const auto& d : degree_box(f.t.r, f.qOrder))
    s.accumulate(s.exponent(qexps(f.t.qNames, d)), coeff_X0(f.t, d));
  return s;
}

Series f0_X1(const Frame& f) {
  const int need = f.qOrder * max_of(f.t.e());
  if (-f.window.lo < need)
    throw WindowTooSmall("f0_X1 needs window lo <= " + std::to_string(-need));
  Series s(f.ctx(true), nullptr);
  const auto r02 = f.t.rho02();
  for (const auto& d : degree_box(f.t.r, f.qOrder)) {
    auto e = qexps(f.t.qNames, d);
    e[f.y] = -pairing(r02, d);
    s.accumulate(s.exponent(e), coeff_X0(f.t, d));
  }
  return s;
}

Series f0_tX2(const Frame& f) {
  Series s(f.ctx(true), nullptr);
  for (const auto& d : degree_box(f.t.r, f.qOrder))
    for (int d0 = 0; d0 <= f.window.hi; ++d0) {
      auto e = qexps(f.t.qNames, d);
      e[f.y] = d0;
      s.accumulate(s.exponent(e), coeff_tX2(f.t, d, d0));
    }
  return s;
}

BothFamily f0_both_family(const Frame& f) {
  if (f.kase != GlueCase::Both) throw std::invalid_argument("f0_both_family needs a Both frame");
  const int cap0 = std::min(f.q0Order, f.qOrder);
  if (-f.window.lo < cap0)
    throw WindowTooSmall("f0_tX1 needs window lo <= " + std::to_string(-cap0));
  BothFamily b{Series(f.ctx(false), nullptr), Series(f.ctx(true), nullptr),
               Series(f.ctx(true), nullptr)};
  for (const auto& d : degree_box(f.t.r, f.qOrder)) {
    for (int d0 = 0; d0 <= cap0; ++d0) {
      auto e = qexps(f.t.qNames, d);
      if (d0) e[f.q0] = d0;
      b.tX.accumulate(b.tX.exponent(e), coeff_both_tX(f.t, d, d0));
      if (d0) e[f.y] = -d0;
      b.tX1.accumulate(b.tX1.exponent(e), coeff_both_tX1(f.t, d, d0));
    }
    for (int d0 = 0; d0 <= f.window.hi; ++d0) {
      auto e = qexps(f.t.qNames, d);
      if (d0) e[f.y] = d0;
      b.tX2.accumulate(b.tX2.exponent(e), coeff_both_tX2(f.t, d, d0));
    }
  }
  return b;
}

Series pullback_scaled(const Frame& f) {
  const auto a = f.t.a(), e = f.t.e();
  Frame wide = f;
  if (f.kase == GlueCase::General) {
    const int shift = f.qOrder * max_of(e);
    if (-f.window.lo < shift)
      throw WindowTooSmall("pullback needs window lo <= " + std::to_string(-shift));
    wide.window.hi += shift;
  } else {
    const int cap0 = std::min(f.q0Order, f.qOrder);
    wide.window.hi += cap0;
    wide.window.lo = std::min(f.window.lo, -cap0);
  }
  auto ctx = wide.ctx(true);
  Series sum(ctx, nullptr);
  std::map<int, Series> by_k, by_k0;
  auto geom = [&](std::map<int, Series>& cache, const std::map<std::string, int>& u, int k) {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, expand_neg_binomial(ctx, nullptr, u, k)).first;
    return it->second;
  };
  for (const auto& d : degree_box(f.t.r, f.qOrder)) {
    const BigRational c = coeff_X0(f.t, d);
    auto ex = qexps(f.t.qNames, d);
    Series term(ctx, nullptr);
    if (f.kase == GlueCase::General) {
      ex[f.y] = -pairing(e, d);
      term = mul(Series::monomial(ctx, nullptr, ex, c), geom(by_k, {{f.y, 1}}, pairing(a, d)));
    } else {
      term = mul(Series::monomial(ctx, nullptr, ex, c), geom(by_k, {{f.y, 1}}, pairing(a, d)));
      term = mul(term, geom(by_k0, {{f.q0, 1}, {f.y, -1}}, pairing(e, d)));
    }
    sum = add(sum, term);
  }
  return retruncate(sum, f.ctx(true));
}

Series quintic_iterative_period(int order, const std::string& psi) {
  TruncationSpec tr;
  tr.maxTotalDegQ = order;
  tr.windows["y"] = Window{-order - 1, std::max(order, 1)};
  auto ctx = make_context(VarTable({psi}, {"y"}), tr);
  Series g(ctx, nullptr);
  for (int d = 0; d <= order; ++d) {
    BigRational c = fact_ratio({4L * d}, {d, d, d, d});
    auto mono = Series::monomial(ctx, nullptr, {{psi, d}, {"y", -d - 1}}, c);
    g = add(g, mul(mono, expand_neg_binomial(ctx, nullptr, {{"y", 1}}, 4 * d)));
  }
  // dy = y * (dy/y)
  g = mul(g, Series::monomial(ctx, nullptr, {{"y", 1}}));
  return constant_term_y(g, "y");
}

CheckResult verify_period_gluing(const Frame& f) {
  const auto& qs = f.t.qNames;
  Series lhs(f.ctx(false), nullptr), rhs = lhs;
  if (f.kase == GlueCase::General) {
    lhs = hadamard_q(f0_X(f), f0_X0(f), qs);
    rhs = constant_term_y(hadamard_q(f0_X1(f), f0_tX2(f), qs), f.y);
  } else {
    auto b = f0_both_family(f);
    lhs = hadamard_q(b.tX, f0_X0(f), qs);
    rhs = constant_term_y(hadamard_q(b.tX1, b.tX2, qs), f.y);
  }
  return compare_series("period-glue", lhs, rhs, f.qOrder);
}

CheckResult verify_reconstruction(const Frame& f) {
  auto lhs = constant_term_y(pullback_scaled(f), f.y);
  auto rhs = f.kase == GlueCase::General ? f0_X(f) : f0_both_family(f).tX;
  return compare_series("reconstruct", lhs, rhs, f.qOrder);
}

Series k3_period(ContextPtr ctx, const std::string& q) {
  Series s(std::move(ctx), nullptr);
  for (int d = 0; d <= s.trunc().maxTotalDegQ; ++d)
    s.accumulate(s.exponent({{q, d}}), fact_ratio({4L * d}, {d, d, d, d}));
  return s;
}

Series q5_period(ContextPtr ctx, const std::string& q) {
  Series s(std::move(ctx), nullptr);
  for (int d = 0; d <= s.trunc().maxTotalDegQ; ++d)
    s.accumulate(s.exponent({{q, d}}), fact_ratio({5L * d}, {d, d, d, d, d}));
  return s;
}

Series tq5_period(ContextPtr ctx, const std::string& q1, const std::string& q0) {
  Series s(std::move(ctx), nullptr);
  lattice2(s, [&](Series& r, int d1, int d0) {
    r.accumulate(r.exponent({{q1, d1}, {q0, d0}}),
                 fact_ratio({4L * d1 + d0, d1 + d0}, {d1, d1, d1, d1, d1, d0, d0}));
  });
  return s;
}

Series conifold_tx1_period(ContextPtr ctx, const std::string& q1, const std::string& q0,
                           const std::string& y) {
  Series s(std::move(ctx), nullptr);
  lattice2(s, [&](Series& r, int d1, int d0) {
    std::map<std::string, int> e{{q1, d1}, {q0, d0}};
    if (!y.empty()) e[y] = -d0;
    r.accumulate(r.exponent(e), fact_ratio({4L * d1 + d0}, {d1, d1, d1, d1, d0}));
  });
  return s;
}

Series conifold_tx2_period(ContextPtr ctx, const std::string& q1, const std::string& y) {
  Series s(std::move(ctx), nullptr);
  lattice2(s, [&](Series& r, int d1, int d0) {
    r.accumulate(r.exponent({{q1, d1}, {y, d0}}),
                 fact_ratio({4L * d1, d1 + d0}, {d1, d1, d1, d1, d1, d0}));
  });
  return s;
}

Series quintic_x1_period(ContextPtr ctx, int e, const std::string& q1, const std::string& y) {
  Series s(std::move(ctx), nullptr);
  for (int d = 0; d <= s.trunc().maxTotalDegQ; ++d)
    s.accumulate(s.exponent({{q1, d}, {y, -e * d}}), fact_ratio({4L * d}, {d, d, d, d}));
  return s;
}

Series quintic_tx2_period(ContextPtr ctx, int e, const std::string& q1, const std::string& y) {
  Series s(std::move(ctx), nullptr);
  lattice2(s, [&](Series& r, int d1, int d0) {
    BigRational c = e == 1 ? fact_ratio({4L * d1 + d0}, {d1, d1, d1, d1, d0})
                           : fact_ratio({4L * d1, d1 + d0}, {d1, d1, d1, d1, d1, d0});
    r.accumulate(r.exponent({{q1, d1}, {y, d0}}), c);
  });
  return s;
}

Series first_block_period(ContextPtr ctx, FirstBlock kind, const std::vector<std::string>& q,
                          const std::string& q0, const std::string& y) {
  Series s(std::move(ctx), nullptr);
  const int n = static_cast<int>(q.size());
  const int b = loop_bound(s.context());
  for (const auto& d : degree_box(n, s.trunc().maxTotalDegQ)) {
    long sum = 0;
    std::vector<long> den;
    for (int x : d) {
      sum += x;
      den.push_back(x);
      den.push_back(x);
    }
    auto ex = qexps(q, d);
    if (kind == FirstBlock::X0) {
      s.accumulate(s.exponent(ex), fact_ratio({sum, sum}, den));
      continue;
    }
    for (int d0 = 0; d0 <= b; ++d0) {
      auto e = ex;
      auto dd = den;
      BigRational c;
      if (kind == FirstBlock::X) {
        e[q0] = d0;
        dd.push_back(d0);
        dd.push_back(d0);
        c = fact_ratio({d0 + sum, d0 + sum}, dd);
      } else {
        if (kind == FirstBlock::X1) {
          e[q0] = d0;
          e[y] = -d0;
        } else {
          e[y] = d0;
        }
        dd.push_back(d0);
        c = fact_ratio({d0 + sum, sum}, dd);
      }
      s.accumulate(s.exponent(e), c);
    }
  }
  return s;
}

Series tx2_original(ContextPtr ctx, int e) {
  Series s(std::move(ctx), nullptr);
  lattice2(s, [&](Series& r, int d1, int d0) {
    BigRational c = e == 1 ? fact_ratio({4L * d1 + d0}, {d1, d1, d1, d1, d0})
                           : fact_ratio({4L * d1, d1 + d0}, {d1, d1, d1, d1, d1, d0});
    r.accumulate(r.exponent({{"q12", d1}, {"q02", d0}, {"y2", e * d1 - d0}}), c);
  });
  return s;
}

Series tx2_to_glued(const Series& original, int e, ContextPtr glued) {
  std::map<std::string, MonomialImage> img;
  img["q12"] = MonomialImage{1, {{"q1", 1}, {"y2", -e}}};
  img["q02"] = MonomialImage{1, {{"y", 1}, {"y2", 1}}};
  return substitute(original, img, std::move(glued));
}

} // namespace tyurin

namespace tyurin {

namespace {

CheckResult glue_closed(const std::string& id, const Frame& f, const Series& x, const Series& x0,
                        const Series& x1, const Series& x2) {
  const auto& qs = f.t.qNames;
  auto lhs = hadamard_q(x, x0, qs);
  auto rhs = constant_term_y(hadamard_q(x1, x2, qs), f.y);
  return compare_series(id, lhs, rhs, f.qOrder);
}

} // namespace

CheckResult verify_conifold_period_gluing(int order) {
  auto f = make_frame(quintic_p4(), GlueCase::Both, order, order);
  const auto q1 = f.t.qNames[0];
  auto c0 = f.ctx(false), c1 = f.ctx(true);
  return glue_closed("period-glue/conifold", f, tq5_period(c0, q1, f.q0), k3_period(c0, q1),
                     conifold_tx1_period(c1, q1, f.q0, f.y), conifold_tx2_period(c1, q1, f.y));
}

CheckResult verify_quintic_period_gluing(int e, int order) {
  if (e != 1 && e != 4) throw UnknownExample("quintic degeneration needs e = 1 or 4");
  auto t = e == 4 ? quintic_p4() : swap_refinement(quintic_p4());
  auto f = make_frame(t, GlueCase::General, order, order);
  const auto q1 = t.qNames[0];
  auto c0 = f.ctx(false), c1 = f.ctx(true);
  return glue_closed("period-glue/quintic-e" + std::to_string(e), f, q5_period(c0, q1),
                     k3_period(c0, q1), quintic_x1_period(c1, e, q1, f.y),
                     quintic_tx2_period(c1, e, q1, f.y));
}

CheckResult verify_quintic_iterative(int order) {
  auto lhs = quintic_iterative_period(order, "psi");
  return compare_series("period-glue/quintic-iterative", lhs, q5_period(lhs.context(), "psi"),
                        order);
}

CheckResult verify_first_block(int n, int order) {
  const std::string id = "period-glue/first-block/n=" + std::to_string(n);
  auto f = make_frame(both_blowup_base(p1_power(n)), GlueCase::Both, order, order);
  const auto& q = f.t.qNames;
  auto c0 = f.ctx(false), c1 = f.ctx(true);
  auto x = first_block_period(c0, FirstBlock::X, q, f.q0, f.y);
  auto x0 = first_block_period(c0, FirstBlock::X0, q, f.q0, f.y);
  auto x1 = first_block_period(c1, FirstBlock::X1, q, f.q0, f.y);
  auto x2 = first_block_period(c1, FirstBlock::X2, q, f.q0, f.y);
  auto b = f0_both_family(f);
  for (const auto& [closed, general, what] :
       {std::tuple{&x, &b.tX, "X"}, {&x0, nullptr, "X0"}, {&x1, &b.tX1, "X1"}, {&x2, &b.tX2, "X2"}}) {
    auto r = compare_series(id, *closed, general ? *general : f0_X0(f), f.qOrder,
                            std::string("closed form of ") + what);
    if (!r.passed()) return r;
  }
  auto r = glue_closed(id, f, x, x0, x1, x2);
  if (r.passed()) r.note = "product formula; closed forms match the general series";
  return r;
}

} // namespace tyurin
