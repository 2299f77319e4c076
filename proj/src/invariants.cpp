#include "tyurin/invariants.hpp"

#include "tyurin/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace tyurin {

namespace {

RationalFunc V(const std::string& n) { return RationalFunc::var(n); }
RationalFunc C(long c) { return RationalFunc(BigRational(c)); }

std::string clip(const std::string& s) {
  constexpr std::size_t kMax = 240;
  return s.size() <= kMax ? s : s.substr(0, kMax) + "...";
}

CheckResult fail_with(const std::string& id, const std::string& what, const RationalFunc& l,
                     const RationalFunc& r, const std::string& note = "") {
  CheckResult res;
  res.checkId = id;
  res.status = Status::Fail;
  Mismatch m;
  m.monomial = what;
  m.lhs = clip(l.str());
  m.rhs = clip(r.str());
  res.firstMismatch = m;
  res.note = note;
  return res;
}

bool taken(const ToricCI& t, const std::string& n) {
  return std::find(t.qNames.begin(), t.qNames.end(), n) != t.qNames.end();
}

// runs labelled equalities, stopping at the first failure
CheckResult run_equalities(const std::string& id,
                           const std::vector<std::tuple<std::string, RationalFunc, RationalFunc>>& eqs,
                           const std::string& note = "") {
  for (const auto& [what, l, r] : eqs)
    if (!(l == r)) return fail_with(id, what, l, r, note);
  return pass_result(id, 0, note);
}

std::string parts_str(const std::vector<int>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

} // namespace

InvariantSet build_invariants(const ToricCI& t, GlueCase c) {
  InvariantSet s;
  s.kase = c;
  const std::string base0 = taken(t, "q0") ? "qb" : "q0";
  s.y = "y";
  s.y1 = "y1";
  s.y2 = "y2";
  s.q02 = base0 + "_2";
  if (c == GlueCase::Both) {
    s.q0 = base0;
    s.q01 = base0 + "_1";
  }
  const auto a = t.a(), e = t.e();
  const auto y = V(s.y), y1 = V(s.y1), y2 = V(s.y2), q02 = V(s.q02);
  s.ident.emplace_back(s.y1, y);
  s.ident.emplace_back(s.y2, q02 / y);
  if (c == GlueCase::Both) s.ident.emplace_back(s.q01, V(s.q0));
  for (int i = 0; i < t.r; ++i) {
    s.q.push_back(t.qNames[i]);
    s.q1.push_back(t.qNames[i] + "_1");
    s.q2.push_back(t.qNames[i] + "_2");
    const auto qi = V(s.q[i]), qi1 = V(s.q1[i]), qi2 = V(s.q2[i]);
    if (c == GlueCase::General) {
      s.lambda.push_back(qi / ((C(1) - y).pow(a[i]) * y.pow(e[i])));
      s.lambda1.push_back(qi1 / y1.pow(e[i]));
      s.lambda2.push_back(qi2 / (y2.pow(-e[i]) * (C(1) - q02 / y2).pow(a[i])));
      s.ident.emplace_back(s.q1[i], qi);
      s.ident.emplace_back(s.q2[i], qi * (y / q02).pow(e[i]));
    } else {
      const auto q0 = V(s.q0), q01 = V(s.q01);
      s.lambda.push_back(qi / ((C(1) - y).pow(a[i]) * (C(1) - q0 / y).pow(e[i])));
      s.lambda1.push_back(qi1 / (C(1) - q01 / y1).pow(e[i]));
      s.lambda2.push_back(qi2 / (C(1) - q02 / y2).pow(a[i]));
      s.ident.emplace_back(s.q1[i], qi);
      s.ident.emplace_back(s.q2[i], qi);
    }
  }
  return s;
}

CheckResult check_product_relation(const ToricCI& t, GlueCase c, bool perturb) {
  auto s = build_invariants(t, c);
  if (perturb && !s.lambda2.empty())
    s.lambda2[0] = s.lambda2[0] / (C(1) - V(s.q02) / V(s.y2));
  const std::string id = "fi-product/" + t.label + "/" + to_string(c);
  for (int i = 0; i < t.r; ++i) {
    const auto qi = V(s.q[i]);
    auto lhs = s.lambda[i] / qi;
    auto rhs = substitute(s.lambda1[i], s.ident) * substitute(s.lambda2[i], s.ident) / (qi * qi);
    if (!(lhs == rhs)) return fail_with(id, "lambda for " + s.q[i], lhs, rhs);
  }
  return pass_result(id, 0, std::to_string(t.r) + (t.r == 1 ? " relation" : " relations"));
}

HurwitzGlue hurwitz_glue(const std::vector<int>& a, const std::vector<int>& b, HurwitzVersion v) {
  if (a.empty() || b.empty()) throw DegenerateParameters("partitions must be nonempty");
  for (int x : a)
    if (x <= 0) throw DegenerateParameters("partition parts must be positive");
  for (int x : b)
    if (x <= 0) throw DegenerateParameters("partition parts must be positive");
  const int n = static_cast<int>(a.size()), m = static_cast<int>(b.size());
  const int A = std::accumulate(a.begin(), a.end(), 0), B = std::accumulate(b.begin(), b.end(), 0);
  const int an = a.back(), bm = b.back();
  const auto Q = V("Q"), q = V("q"), y = V("y"), yt = V("yt"), z1 = V("z1"), z2 = V("z2");
  const auto one = C(1);
  auto f = [&](const RationalFunc& c) { return (c - q) / (one - q); };

  HurwitzGlue h;
  RationalFunc R = one / (yt.pow(A) * (one - yt).pow(B));
  RationalFunc Z2;
  if (v == HurwitzVersion::Updated) {
    const auto q1 = V("q1"), y1 = V("y1"), q2 = V("q2"), y2 = V("y2");
    RationalFunc l1 = one / (one - q1 / y1).pow(A), l2 = one / (one - q2 / y2).pow(B);
    RationalFunc sign = one;
    for (int i = 0; i + 1 < n; ++i) {
      const auto c = V("q1(" + std::to_string(i + 1) + ")");
      l1 = l1 * (one - c / y1).pow(a[i]);
      R = R * (yt - f(c)).pow(a[i]);
    }
    for (int j = 0; j + 1 < m; ++j) {
      const auto c = V("q2(" + std::to_string(j + 1) + ")");
      const auto bar = q / c;
      l2 = l2 * (one - c / y2).pow(b[j]);
      R = R * (yt - f(bar)).pow(b[j]);
      sign = sign * (-bar).pow(-b[j]);
    }
    Identification glue{{"q1", q}, {"y1", y}, {"y2", q / y}, {"q2", q}};
    h.glued = Q * substitute(l1, glue) * substitute(l2, glue);
    Z2 = Q * sign * q.pow(an) / (one - q).pow(an + bm);
  } else {
    const auto q1 = V("q1"), y1 = V("y1"), q2 = V("q2"), y2 = V("y2");
    RationalFunc l1 = one / (one - q1 / y1).pow(A), l2 = one / (one - q2 / y2).pow(B);
    RationalFunc scale = one;
    for (int i = 0; i + 1 < n; ++i) {
      const auto al = V("alpha" + std::to_string(i + 1));
      l1 = l1 * (q1 / y1 - al).pow(a[i]);
      R = R * (yt - f(q / al)).pow(a[i]);
      scale = scale * (v == HurwitzVersion::Original ? -al : al).pow(a[i]);
    }
    for (int j = 0; j + 1 < m; ++j) {
      const auto be = V("beta" + std::to_string(j + 1));
      l2 = l2 * (q2 / y2 - be).pow(b[j]);
      R = R * (yt - f(be)).pow(b[j]);
    }
    Identification glue{{"q1", q}, {"y1", y}, {"y2", q2 / y}};
    h.glued = Q * substitute(l1, glue) * substitute(l2, glue);
    Z2 = Q * q.pow(an) * scale / (one - q).pow(an + bm);
  }
  const auto Z1 = (one - q) / q * Z2;
  h.transformed = substitute(h.glued, {{"y", (one - q) * yt + q}});
  h.zForm = z2.pow(1 - an) * (z1 * yt + z2).pow(an) * R;
  h.normalForm = substitute(h.zForm, {{"z1", Z1}, {"z2", Z2}});
  h.limit = substitute(h.zForm, {{"z1", C(0)}});
  h.limitExpected = z2 * R;
  return h;
}

CheckResult verify_hurwitz(const std::vector<int>& a, const std::vector<int>& b, HurwitzVersion v) {
  std::string tag = v == HurwitzVersion::Updated ? "updated"
                    : v == HurwitzVersion::Original ? "original"
                                                     : "original-literal";
  const std::string id = "hurwitz/" + tag + parts_str(a) + parts_str(b);
  auto h = hurwitz_glue(a, b, v);
  return run_equalities(id, {{"normal form", h.transformed, h.normalForm},
                             {"z1 -> 0 limit", h.limit, h.limitExpected}});
}

CheckResult verify_hurwitz_all(int maxTotal, HurwitzVersion v) {
  // compositions of k, in lexicographic order
  std::function<void(int, std::vector<int>&, std::vector<std::vector<int>>&)> comps =
      [&](int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
        if (k == 0) {
          out.push_back(cur);
          return;
        }
        for (int p = 1; p <= k; ++p) {
          cur.push_back(p);
          comps(k - p, cur, out);
          cur.pop_back();
        }
      };
  int cases = 0;
  for (int total = 2; total <= maxTotal; ++total)
    for (int A = 1; A < total; ++A) {
      std::vector<std::vector<int>> as, bs;
      std::vector<int> cur;
      comps(A, cur, as);
      comps(total - A, cur, bs);
      for (const auto& a : as)
        for (const auto& b : bs) {
          auto r = verify_hurwitz(a, b, v);
          ++cases;
          if (!r.passed()) return r;
        }
    }
  return pass_result("hurwitz/all", 0, std::to_string(cases) + " partition pairs");
}

CheckResult verify_quintic_limit() {
  const auto yt = V("yt"), z1 = V("z1"), z2 = V("z2"), one = C(1);
  auto h = hurwitz_glue({1}, {4});
  const auto form = (z1 * yt + z2) / (yt * (yt - one).pow(4));
  const auto quintic = z2 / (yt * (yt - one).pow(4));
  // conifold invariant under y -> q0/y against the glued product
  auto coni = build_invariants(quintic_p4(), GlueCase::Both);
  const auto& qn = coni.q[0];
  auto flipped = substitute(coni.lambda[0], {{coni.y, V(coni.q0) / V(coni.y)}});
  auto glued = substitute(h.glued, {{"Q", V(qn)}, {"q", V(coni.q0)}, {"y", V(coni.y)}});
  // the one-blow-up quintic invariant q/((1-y) y^4) is the same curve after y -> 1-y
  auto gen = build_invariants(quintic_p4(), GlueCase::General);
  auto reflected = substitute(gen.lambda[0], {{gen.y, one - V(gen.y)}});
  auto target = substitute(quintic, {{"z2", V(qn)}, {"yt", V(gen.y)}});
  return run_equalities("hurwitz/quintic-limit", {{"z-form", h.zForm, form},
                                                  {"z1 -> 0", h.limit, quintic},
                                                  {"conifold invariant", flipped, glued},
                                                  {"quintic invariant", reflected, target}});
}

CheckResult verify_conifold_rewrite() {
  const auto y = V("y"), q1 = V("q1"), q0 = V("q0"), yt = V("yt"), one = C(1);
  const auto lam = y * q1 / ((y - one) * (y - q0).pow(4));
  const auto moved = substitute(lam, {{"y", (one - q0) * yt + q0}});
  const auto step1 = q1 / (one - q0).pow(5) * ((one - q0) * yt + q0) / (yt.pow(4) * (yt - one));
  const auto step2 = q1 * q0 / (one - q0).pow(5) * ((one - q0) / q0 * yt + one) / (yt.pow(4) * (yt - one));
  const auto Z1 = q1 / (one - q0).pow(4), Z2 = Z1 * q0 / (one - q0);
  const auto zform = (Z1 * yt + Z2) / (yt.pow(4) * (yt - one));
  return run_equalities("hurwitz/conifold-rewrite",
                        {{"shifted", moved, step1}, {"factored", moved, step2}, {"z-form", moved, zform}},
                        "denominator yt^4 (yt-1)");
}

LGNormalForm lg_normal_form(LGSide which, int n) {
  if (n < 1) throw std::invalid_argument("LG normal form needs n >= 1");
  const auto one = C(1);
  LGNormalForm r;
  const std::string s = which == LGSide::X1 ? "_1" : "_2";
  const auto q0 = V("q0" + s);
  RationalFunc sx = C(0), sq = C(0), tq = C(0);
  Identification ident;
  std::vector<RationalFunc> xs, qs;
  for (int i = 1; i <= n; ++i) {
    xs.push_back(V("x" + std::to_string(i)));
    qs.push_back(V("q" + std::to_string(i) + s));
  }
  for (int i = 0; i < n; ++i) {
    sx = sx + xs[i];
    sq = sq + qs[i] / xs[i];
  }
  RationalFunc e1, e2;
  if (which == LGSide::X1) {
    const auto y1 = V("y1"), z1 = V("z1");
    e1 = sx - one;
    e2 = q0 / y1 + sq - one;
    ident.emplace_back("y1", q0 * z1 / (z1 + q0));
    for (int i = 0; i < n; ++i) {
      ident.emplace_back("x" + std::to_string(i + 1), -xs[i] / z1);
      ident.emplace_back("q" + std::to_string(i + 1) + s, -qs[i] / z1);
    }
    r.target = {z1 + sx, q0 / z1 + sq};
  } else {
    const auto y2 = V("y2"), z2 = V("z2");
    e1 = q0 / y2 + sx - one;
    e2 = sq - one;
    ident.emplace_back("y2", q0 / (z2 + one));
    for (int i = 0; i < n; ++i) ident.emplace_back("q" + std::to_string(i + 1) + s, -z2 * qs[i] / q0);
    r.target = {z2 + sx, q0 / z2 + sq};
  }
  r.transformed = {substitute(e1, ident), substitute(e2, ident)};
  for (std::size_t k = 0; k < 2; ++k) {
    auto m = monomial_ratio(r.transformed[k], r.target[k]);
    r.factors.push_back(m ? monomial_str(m->first, m->second) : "");
  }
  return r;
}

CheckResult verify_lg_normal_form(LGSide which, int n) {
  const std::string id = std::string("lg-normal-form/") + (which == LGSide::X1 ? "X1" : "X2") +
                         "/n=" + std::to_string(n);
  auto r = lg_normal_form(which, n);
  for (std::size_t k = 0; k < 2; ++k)
    if (r.factors[k].empty())
      return fail_with(id, "equation " + std::to_string(k + 1), r.transformed[k], r.target[k],
                      "not a monomial multiple");
  return pass_result(id, 0, "factors " + r.factors[0] + ", " + r.factors[1]);
}

} // namespace tyurin
