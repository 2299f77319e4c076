#include "tyurin/picard_fuchs.hpp"

#include "tyurin/errors.hpp"
#include "tyurin/ifunctions.hpp"
#include "tyurin/periods.hpp"

#include <cctype>
#include <cstdlib>
#include <set>

namespace tyurin {

namespace {

const std::string kThetaPrefix = "th_";

bool is_theta_var(VarId v) { return var_name(v).rfind(kThetaPrefix, 0) == 0; }

std::string theta_target(VarId v) { return var_name(v).substr(kThetaPrefix.size()); }

int total(const ThetaOperator::QMono& m) {
  int t = 0;
  for (const auto& [v, k] : m) t += k;
  return t;
}

// P(th + b)
MPoly shift(const MPoly& p, const ThetaOperator::QMono& b) {
  Identification ident;
  for (const auto& [v, k] : b)
    if (k != 0) ident.emplace_back(theta_symbol(v), MPoly::var(theta_symbol(v)) + MPoly(BigRational(k)));
  if (ident.empty()) return p;
  auto r = substitute(p, ident);
  // polynomial images leave a constant denominator
  auto [m, c] = r.den().leading();
  return r.num() * MPoly(BigRational(1) / c);
}

} // namespace

std::string theta_symbol(const std::string& var) { return kThetaPrefix + var; }

ThetaOperator::ThetaOperator(const BigRational& c) { add({}, MPoly(c)); }

ThetaOperator ThetaOperator::theta(const std::string& var) {
  ThetaOperator r;
  r.add({}, MPoly::var(theta_symbol(var)));
  return r;
}

ThetaOperator ThetaOperator::q(const std::string& var, int k) {
  ThetaOperator r;
  QMono m;
  if (k != 0) m[var] = k;
  r.add(m, MPoly(BigRational(1)));
  return r;
}

void ThetaOperator::add(const QMono& m, const MPoly& p) {
  if (p.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

int ThetaOperator::q_degree() const {
  int d = 0;
  for (const auto& [m, p] : terms_) d = std::max(d, std::abs(total(m)));
  return d;
}

std::vector<std::string> ThetaOperator::q_variables() const {
  std::set<std::string> s;
  for (const auto& [m, p] : terms_)
    for (const auto& [v, k] : m) s.insert(v);
  return {s.begin(), s.end()};
}

std::vector<std::string> ThetaOperator::theta_variables() const {
  std::set<std::string> s;
  for (const auto& [m, p] : terms_)
    for (VarId v : p.vars())
      if (is_theta_var(v)) s.insert(theta_target(v));
  return {s.begin(), s.end()};
}

ThetaOperator ThetaOperator::operator-() const {
  ThetaOperator r;
  for (const auto& [m, p] : terms_) r.add(m, -p);
  return r;
}

ThetaOperator operator+(const ThetaOperator& a, const ThetaOperator& b) {
  ThetaOperator r = a;
  for (const auto& [m, p] : b.terms_) r.add(m, p);
  return r;
}

ThetaOperator operator-(const ThetaOperator& a, const ThetaOperator& b) { return a + (-b); }

ThetaOperator operator*(const ThetaOperator& a, const ThetaOperator& b) {
  ThetaOperator r;
  for (const auto& [ma, pa] : a.terms_)
    for (const auto& [mb, pb] : b.terms_) {
      auto m = ma;
      for (const auto& [v, k] : mb)
        if ((m[v] += k) == 0) m.erase(v);
      r.add(m, shift(pa, mb) * pb);
    }
  return r;
}

ThetaOperator ThetaOperator::pow(int k) const {
  if (k < 0) {
    if (terms_.size() != 1 || !terms_.begin()->second.is_constant())
      throw std::domain_error("negative power of an operator that is not c*q^a");
    const auto& [m, p] = *terms_.begin();
    QMono inv;
    for (const auto& [v, e] : m) inv[v] = e * k;
    ThetaOperator r;
    r.add(inv, MPoly(BigRational(1) / p.leading().second).pow(-k));
    return r;
  }
  ThetaOperator r(BigRational(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::string ThetaOperator::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, p] : terms_) {
    std::string mono;
    for (const auto& [v, k] : m) {
      if (!mono.empty()) mono += "*";
      mono += v;
      if (k != 1) mono += "^" + std::to_string(k);
    }
    std::string t = mono.empty() ? "(" + p.str() + ")" : mono + "*(" + p.str() + ")";
    s += s.empty() ? t : " + " + t;
  }
  return s;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::string& defaultVar) : s_(text), def_(defaultVar) {}

  ThetaOperator run() {
    auto r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool at_greek() {
    skip();
    return s_.compare(pos_, 2, "\xCE\xB8") == 0 || s_.compare(pos_, 2, "\xCE\xB4") == 0;
  }
  bool at_factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    return c == '(' || std::isalnum(c) || c == '_' || at_greek();
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("operator text, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  ThetaOperator expr() {
    ThetaOperator r;
    bool first = true;
    for (;;) {
      bool negate = false;
      if (at('+') || at('-')) {
        negate = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      auto t = term();
      r = negate ? r - t : r + t;
      first = false;
    }
    return r;
  }

  ThetaOperator term() {
    ThetaOperator r = power();
    for (;;) {
      if (at('*')) {
        ++pos_;
        r = r * power();
      } else if (at('/')) {
        ++pos_;
        auto d = power();
        if (d.terms().size() != 1 || !d.terms().begin()->first.empty() ||
            !d.terms().begin()->second.is_constant())
          fail("division by something other than a nonzero number");
        r = r * ThetaOperator(BigRational(1) / d.terms().begin()->second.leading().second);
      } else if (at_factor_start()) {
        r = r * power();
      } else {
        return r;
      }
    }
  }

  ThetaOperator power() {
    auto b = primary();
    if (!at('^')) return b;
    ++pos_;
    skip();
    bool neg = pos_ < s_.size() && s_[pos_] == '-';
    if (neg) ++pos_;
    std::size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("exponent must be an integer");
    int k = std::stoi(s_.substr(st, pos_ - st));
    try {
      return b.pow(neg ? -k : k);
    } catch (const std::domain_error& e) {
      fail(e.what());
    }
  }

  std::string ident() {
    std::size_t st = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(st, pos_ - st);
  }

  ThetaOperator bare_theta() {
    if (def_.empty()) fail("bare theta needs a default variable");
    return ThetaOperator::theta(def_);
  }

  ThetaOperator primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (at('+') || at('-')) {
      bool neg = s_[pos_] == '-';
      ++pos_;
      auto f = power();
      return neg ? -f : f;
    }
    if (at('(')) {
      ++pos_;
      auto e = expr();
      if (!at(')')) fail("missing ')'");
      ++pos_;
      return e;
    }
    if (at_greek()) {
      pos_ += 2;
      if (pos_ < s_.size() && s_[pos_] == '_') {
        ++pos_;
        auto v = ident();
        if (v.empty()) fail("missing variable after theta");
        return ThetaOperator::theta(v);
      }
      return bare_theta();
    }
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (std::isdigit(c)) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ThetaOperator(BigRational(s_.substr(st, pos_ - st)));
    }
    if (std::isalpha(c) || c == '_') {
      auto id = ident();
      if (id == "th" || id == "theta" || id == "delta") return bare_theta();
      for (const std::string pre : {"th_", "theta_"})
        if (id.rfind(pre, 0) == 0 && id.size() > pre.size())
          return ThetaOperator::theta(id.substr(pre.size()));
      return ThetaOperator::q(id);
    }
    fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

  std::string s_, def_;
  std::size_t pos_ = 0;
};

} // namespace

ThetaOperator parse_operator(const std::string& text, const std::string& defaultVar) {
  return Parser(text, defaultVar).run();
}

Applied apply(const ThetaOperator& op, const Series& f) {
  const auto& vt = f.vars();
  for (const auto& v : op.q_variables()) {
    auto s = vt.find(v);
    if (!s || !vt.is_deformation(*s))
      throw VarMismatch("operator multiplies by " + v + ", which is not a deformation variable");
  }
  for (const auto& v : op.theta_variables())
    if (!vt.find(v)) throw VarMismatch("operator differentiates in unknown variable " + v);

  std::map<Mono, Series, MonoLess> memo;
  memo.emplace(Mono{}, f);
  std::function<const Series&(const Mono&)> th = [&](const Mono& m) -> const Series& {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    auto [v, k] = m.e.back();
    Mono rest = m * Mono::var(v, -1);
    Series r = theta(th(rest), theta_target(v));
    return memo.emplace(m, std::move(r)).first->second;
  };

  Series out(f.context(), f.algebra());
  for (const auto& [qm, p] : op.terms()) {
    Series pf(f.context(), f.algebra());
    for (const auto& [m, c] : p.terms()) pf = add(pf, scale(th(m), c));
    std::vector<int> delta(vt.size(), 0);
    for (const auto& [v, k] : qm) delta[vt.slot(v)] = k;
    Series shifted(f.context(), f.algebra());
    for (const auto& [e, c] : pf.terms()) {
      auto g = e;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += delta[i];
      shifted.accumulate(g, c);
    }
    out = add(out, shifted);
  }
  return {out, f.trunc().maxTotalDegQ - op.q_degree()};
}

CheckResult verify_annihilation(const PFSystem& sys, const Series& f, int upTo,
                                const std::string& id) {
  const std::string cid = id.empty() ? "pf-annihilate/" + sys.name : id;
  if (sys.ops.empty()) throw std::invalid_argument("empty Picard-Fuchs system " + sys.name);
  auto tr = f.trunc();
  tr.maxTotalDegQ = upTo;
  auto ctx = make_context(f.vars(), tr);
  for (std::size_t i = 0; i < sys.ops.size(); ++i) {
    auto a = apply(sys.ops[i], f);
    if (upTo > a.validDegree)
      return skipped_result(cid, "operator " + std::to_string(i + 1) + " is exact only to degree " +
                                     std::to_string(a.validDegree));
    auto lhs = retruncate(a.value, ctx);
    auto r = compare_series(cid, lhs, Series(ctx, f.algebra()), upTo,
                            "operator " + std::to_string(i + 1) + " of " +
                                std::to_string(sys.ops.size()));
    if (!r.passed()) return r;
  }
  return pass_result(cid, upTo, std::to_string(sys.ops.size()) + " operator(s)");
}

ThetaOperator k3_operator(const std::string& q) {
  return parse_operator("th^3 - 4*" + q + "*(4th+1)(4th+2)(4th+3)", q);
}

PFSystem k3_system(const std::string& q) { return {"k3", {k3_operator(q)}, {"f0^K3", "I^K3"}}; }

PFSystem tq5_system(const std::string& q1, const std::string& q0) {
  const std::string a = theta_symbol(q1), b = theta_symbol(q0);
  const std::string l = "(4" + a + "+" + b;
  return {"tq5",
          {parse_operator(a + "^5 - " + q1 + "*" + l + "+1)" + l + "+2)" + l + "+3)" + l + "+4)(" +
                          a + "+" + b + "+1)"),
           parse_operator(b + "^2 - " + q0 + "*" + l + "+1)(" + a + "+" + b + "+1)")},
          {"f0^tQ5", "I^tQ5"}};
}

PFSystem lg_tx1_system(const std::string& q, const std::string& x) {
  const std::string a = theta_symbol(q), b = theta_symbol(x);
  const std::string l = "(4" + a + "+" + b;
  return {"lg-tx1",
          {parse_operator(a + "^4 - " + q + "*" + l + "+1)" + l + "+2)" + l + "+3)" + l + "+4)"),
           parse_operator(b + " - " + x + "*" + l + "+1)")},
          {"f0^tX1"}};
}

PFSystem lg_tx2_system(const std::string& q, const std::string& y) {
  const std::string a = theta_symbol(q), b = theta_symbol(y);
  return {"lg-tx2",
          {parse_operator(a + "^4 - 4" + q + "(4" + a + "+1)(4" + a + "+2)(4" + a + "+3)(" + a +
                          "+" + b + "+1)"),
           parse_operator(b + " - " + y + "(" + a + "+" + b + "+1)")},
          {"f0^tX2"}};
}

namespace {

BigRational fact_quot(const std::vector<long>& num, const std::vector<long>& den) {
  BigRational r = 1;
  for (long n : num) r *= BigRational(factorial(n));
  for (long n : den) r /= BigRational(factorial(n));
  return r;
}

} // namespace

CatalogueEntry catalogue(int N) {
  CatalogueEntry e;
  e.N = N;
  switch (N) {
    case 2:
      e.text = "δ^3 - 256t(δ+1/4)(δ+1/2)(δ+3/4)";
      e.holomorphic = [](long n) -> BigRational { return fact_quot({4 * n}, {n, n, n, n}); };
      e.logCorrection = [](long n) -> BigRational {
        return BigRational(4) * fact_quot({4 * n}, {n, n, n, n}) * (harmonic(4 * n) - harmonic(n));
      };
      break;
    case 3:
      e.text = "δ^3 - 108t(δ+1/2)(δ+1/3)(δ+2/3)";
      e.holomorphic = [](long n) -> BigRational { return fact_quot({2 * n, 3 * n}, {n, n, n, n, n}); };
      e.logCorrection = [](long n) -> BigRational {
        return fact_quot({2 * n, 3 * n}, {n, n, n, n, n}) *
               (2 * harmonic(2 * n) + 3 * harmonic(3 * n) - 5 * harmonic(n));
      };
      break;
    case 4:
      e.text = "δ^3 - 64t(δ+1/2)^3";
      e.holomorphic = [](long n) -> BigRational { return fact_quot({2 * n, 2 * n, 2 * n}, {n, n, n, n, n, n}); };
      e.logCorrection = [](long n) -> BigRational {
        return BigRational(6) * fact_quot({2 * n, 2 * n, 2 * n}, {n, n, n, n, n, n}) *
               (harmonic(2 * n) - harmonic(n));
      };
      break;
    default:
      throw UnknownN("no catalogue entry for N = " + std::to_string(N) + " (known: 2, 3, 4)");
  }
  e.op = parse_operator(e.text, "t");
  return e;
}

Series catalogue_holomorphic(const CatalogueEntry& e, ContextPtr ctx, const std::string& t) {
  Series s(std::move(ctx), nullptr);
  for (long n = 0; n <= s.trunc().maxTotalDegQ; ++n)
    s.accumulate(s.exponent({{t, static_cast<int>(n)}}), e.holomorphic(n));
  return s;
}

Series catalogue_log_solution(const CatalogueEntry& e, ContextPtr ctx, const std::string& t) {
  const auto& vt = ctx->vars();
  auto ls = vt.log_slot_for(vt.slot(t));
  if (!ls) throw VarMismatch("log solution needs a log symbol for " + t);
  const std::string L = vt.name(*ls);
  Series s(ctx, nullptr);
  for (long n = 0; n <= s.trunc().maxTotalDegQ; ++n) {
    const int k = static_cast<int>(n);
    s.accumulate(s.exponent({{t, k}, {L, 1}}), e.holomorphic(n));
    if (n > 0) s.accumulate(s.exponent({{t, k}}), e.logCorrection(n));
  }
  return s;
}

const std::string& kodaira_j_text() {
  static const std::string text = "(1 - 2t + t^2) th_t^2 + 31/144 t - 1/36";
  return text;
}

ThetaOperator kodaira_j_operator() { return parse_operator(kodaira_j_text()); }

namespace {

ContextPtr plain_ctx(std::vector<std::string> vars, int order) {
  TruncationSpec tr;
  tr.maxTotalDegQ = order;
  return make_context(VarTable(std::move(vars), {}), tr);
}

ContextPtr log_ctx(std::vector<std::string> vars, int order, int logDeg) {
  TruncationSpec tr;
  tr.maxTotalDegQ = order;
  tr.maxLogDeg = logDeg;
  return make_context(VarTable::with_logs(std::move(vars), {}), tr);
}

} // namespace

CheckResult verify_k3_ode(int order) {
  auto sys = k3_system("q");
  auto f = k3_period(plain_ctx({"q"}, order + 1), "q");
  return verify_annihilation(sys, f, order, "pf-annihilate/k3");
}

CheckResult verify_tq5_system(int order) {
  auto sys = tq5_system("q1", "q0");
  auto f = tq5_period(plain_ctx({"q1", "q0"}, order + 1), "q1", "q0");
  return verify_annihilation(sys, f, order, "pf-annihilate/tq5");
}

CheckResult verify_lg_systems(int order) {
  const std::string id = "pf-annihilate/lg";
  auto f1 = conifold_tx1_period(plain_ctx({"q", "x"}, order + 1), "q", "x", "");
  auto r = verify_annihilation(lg_tx1_system("q", "x"), f1, order, id);
  if (!r.passed()) {
    r.note = "tX1: " + r.note;
    return r;
  }
  auto f2 = conifold_tx2_period(plain_ctx({"q", "y"}, order + 1), "q", "y");
  r = verify_annihilation(lg_tx2_system("q", "y"), f2, order, id);
  if (!r.passed()) r.note = "tX2: " + r.note;
  else r.note = "tX1 and tX2 systems, 2 operators each";
  return r;
}

CheckResult verify_catalogue(int N, bool logSolution, int order) {
  auto e = catalogue(N);
  const std::string id =
      "pf-annihilate/catalogue-N" + std::to_string(N) + (logSolution ? "/log" : "/holomorphic");
  PFSystem sys{"catalogue-N" + std::to_string(N), {e.op}, {"holomorphic", "log"}};
  auto f = logSolution ? catalogue_log_solution(e, log_ctx({"t"}, order + 1, 1), "t")
                       : catalogue_holomorphic(e, plain_ctx({"t"}, order + 1), "t");
  return verify_annihilation(sys, f, order, id);
}

CheckResult verify_operator_identity() {
  const std::string id = "pf-annihilate/operator-identity";
  auto lhs = parse_operator("256(θ+1/4)(θ+1/2)(θ+3/4)", "t");
  auto rhs = parse_operator("4(4θ+1)(4θ+2)(4θ+3)", "t");
  if (!(lhs == rhs)) {
    Mismatch m{{}, "operator", lhs.str(), rhs.str()};
    return fail_result(id, 0, m, "256 form vs 4(4th+k) form");
  }
  if (!(catalogue(2).op == k3_operator("t"))) {
    Mismatch m{{}, "operator", catalogue(2).op.str(), k3_operator("t").str()};
    return fail_result(id, 0, m, "catalogue N=2 vs K3 operator");
  }
  return pass_result(id, 0, "catalogue N=2 operator equals the K3 operator");
}

CheckResult verify_kodaira_parse() {
  const std::string id = "pf-annihilate/kodaira-j-parse";
  auto op = kodaira_j_operator();
  const auto th2 = ThetaOperator::theta("t").pow(2);
  const auto t = ThetaOperator::q("t");
  auto expected = (ThetaOperator(BigRational(1)) - t).pow(2) * th2 +
                  ThetaOperator(BigRational(31, 144)) * t - ThetaOperator(BigRational(1, 36));
  for (const auto& [got, want, what] :
       {std::tuple{op, expected, "parsed text vs built operator"},
        std::tuple{parse_operator(op.str()), op, "round trip through str()"}}) {
    if (!(got == want)) return fail_result(id, 0, Mismatch{{}, "operator", got.str(), want.str()}, what);
  }
  return pass_result(id, 0, "parse only; no solution series to annihilate");
}

CheckResult verify_I_annihilation(const std::string& kind, int order, int pOrder) {
  const std::string id = "pf-annihilate/I-" + kind;
  if (kind == "k3") {
    auto alg = NilpotentAlgebra::make({{"H", 3}});
    auto f = I_k3(log_ctx({"q"}, order + 1, max_log_degree(alg)), alg, "q");
    return verify_annihilation(k3_system("q"), f, order, id);
  }
  if (kind == "tq5") {
    auto alg = NilpotentAlgebra::make({{"H", 4}, {"P", 2}});
    auto f = I_tq5(log_ctx({"q1", "q0"}, order + 1, max_log_degree(alg)), alg, "q1", "q0");
    return verify_annihilation(tq5_system("q1", "q0"), f, order, id);
  }
  auto alg = NilpotentAlgebra::make({{"H", 3}, {"P", pOrder}});
  const std::string note = pOrder == 1 ? " (P = 0)" : " (P^" + std::to_string(pOrder) + " = 0)";
  CheckResult r;
  if (kind == "lg-tx1") {
    auto f = I_conifold_tx1(log_ctx({"q", "x"}, order + 1, max_log_degree(alg)), alg, "q", "x", "");
    r = verify_annihilation(lg_tx1_system("q", "x"), f, order, id);
  } else if (kind == "lg-tx2") {
    auto f = I_conifold_tx2(log_ctx({"q", "y"}, order + 1, max_log_degree(alg)), alg, "q", "y");
    r = verify_annihilation(lg_tx2_system("q", "y"), f, order, id);
  } else {
    throw std::invalid_argument("unknown I-function kind " + kind);
  }
  r.note += note;
  return r;
}

} // namespace tyurin
