#include "tyurin/series.hpp"

#include "tyurin/errors.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

namespace tyurin {

VarTable::VarTable(std::vector<std::string> deformation, std::vector<std::string> laurent,
                   std::vector<LogSymbol> logs)
    : def_(std::move(deformation)), lau_(std::move(laurent)), logs_(std::move(logs)) {
  std::set<std::string> names;
  for (const auto& n : def_)
    if (!names.insert(n).second) throw VarMismatch("duplicate variable " + n);
  for (const auto& n : lau_)
    if (!names.insert(n).second) throw VarMismatch("duplicate variable " + n);
  std::set<std::string> paired;
  for (const auto& l : logs_) {
    if (!names.insert(l.name).second) throw VarMismatch("duplicate symbol " + l.name);
    if (std::find(def_.begin(), def_.end(), l.var) == def_.end() &&
        std::find(lau_.begin(), lau_.end(), l.var) == lau_.end())
      throw VarMismatch("log symbol " + l.name + " refers to unknown variable " + l.var);
    if (!paired.insert(l.var).second) throw VarMismatch("two log symbols for " + l.var);
  }
}

VarTable VarTable::with_logs(std::vector<std::string> deformation,
                             std::vector<std::string> laurent) {
  std::vector<LogSymbol> logs;
  for (const auto& v : deformation) logs.push_back({"L_" + v, v});
  for (const auto& v : laurent) logs.push_back({"L_" + v, v});
  return VarTable(std::move(deformation), std::move(laurent), std::move(logs));
}

std::optional<std::size_t> VarTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < def_.size(); ++i)
    if (def_[i] == name) return i;
  for (std::size_t i = 0; i < lau_.size(); ++i)
    if (lau_[i] == name) return def_.size() + i;
  for (std::size_t i = 0; i < logs_.size(); ++i)
    if (logs_[i].name == name) return def_.size() + lau_.size() + i;
  return std::nullopt;
}

std::size_t VarTable::slot(const std::string& name) const {
  auto s = find(name);
  if (!s) throw VarMismatch("unknown variable " + name);
  return *s;
}

const std::string& VarTable::name(std::size_t s) const {
  if (s < def_.size()) return def_[s];
  if (s < def_.size() + lau_.size()) return lau_[s - def_.size()];
  return logs_.at(s - def_.size() - lau_.size()).name;
}

std::optional<std::size_t> VarTable::log_slot_for(std::size_t var_slot) const {
  const auto& v = name(var_slot);
  for (std::size_t i = 0; i < logs_.size(); ++i)
    if (logs_[i].var == v) return def_.size() + lau_.size() + i;
  return std::nullopt;
}

std::size_t VarTable::var_slot_of_log(std::size_t log_slot) const {
  return slot(logs_.at(log_slot - def_.size() - lau_.size()).var);
}

VarTable VarTable::without(const std::string& var) const {
  auto d = def_;
  auto l = lau_;
  auto g = logs_;
  std::erase(d, var);
  std::erase(l, var);
  std::erase_if(g, [&](const LogSymbol& s) { return s.var == var; });
  return VarTable(std::move(d), std::move(l), std::move(g));
}

SeriesContext::SeriesContext(VarTable vars, TruncationSpec trunc)
    : vars_(std::move(vars)), trunc_(std::move(trunc)) {
  if (trunc_.maxTotalDegQ < 0) throw std::invalid_argument("maxTotalDegQ must be >= 0");
  if (trunc_.maxLogDeg < 0) throw std::invalid_argument("maxLogDeg must be >= 0");
  for (const auto& [n, c] : trunc_.degCaps) {
    auto s = vars_.find(n);
    if (!s || !vars_.is_deformation(*s)) throw VarMismatch("degree cap on non-deformation var " + n);
  }
  cap_.assign(vars_.n_def(), INT_MAX);
  for (std::size_t i = 0; i < vars_.n_def(); ++i) {
    auto it = trunc_.degCaps.find(vars_.deformation()[i]);
    if (it != trunc_.degCaps.end()) cap_[i] = it->second;
  }
  for (const auto& y : vars_.laurent()) {
    auto it = trunc_.windows.find(y);
    if (it == trunc_.windows.end()) throw TruncMismatch("no window for laurent var " + y);
    if (it->second.lo > 0 || it->second.hi < 0) throw TruncMismatch("window must contain 0 for " + y);
    lo_.push_back(it->second.lo);
    hi_.push_back(it->second.hi);
  }
  for (const auto& [n, w] : trunc_.windows) {
    if (std::find(vars_.laurent().begin(), vars_.laurent().end(), n) == vars_.laurent().end())
      throw TruncMismatch("window for unknown laurent var " + n);
  }
}

bool SeriesContext::admits(const std::vector<int>& e) const {
  const std::size_t nd = vars_.n_def(), nl = vars_.n_laurent();
  int tot = 0;
  for (std::size_t i = 0; i < nd; ++i) {
    if (e[i] < 0 || e[i] > cap_[i]) return false;
    tot += e[i];
  }
  if (tot > trunc_.maxTotalDegQ) return false;
  for (std::size_t i = 0; i < nl; ++i)
    if (e[nd + i] < lo_[i] || e[nd + i] > hi_[i]) return false;
  int lg = 0;
  for (std::size_t i = nd + nl; i < e.size(); ++i) {
    if (e[i] < 0) return false;
    lg += e[i];
  }
  return lg <= trunc_.maxLogDeg;
}

int SeriesContext::q_degree(const std::vector<int>& e) const {
  int t = 0;
  for (std::size_t i = 0; i < vars_.n_def(); ++i) t += e[i];
  return t;
}

int SeriesContext::log_degree(const std::vector<int>& e) const {
  int t = 0;
  for (std::size_t i = vars_.n_def() + vars_.n_laurent(); i < e.size(); ++i) t += e[i];
  return t;
}

ContextPtr make_context(VarTable vars, TruncationSpec trunc) {
  return std::make_shared<const SeriesContext>(std::move(vars), std::move(trunc));
}

Series::Series(ContextPtr ctx, AlgebraPtr alg) : ctx_(std::move(ctx)), alg_(std::move(alg)) {
  if (!alg_) alg_ = NilpotentAlgebra::trivial();
}

Series::Series(VarTable vars, TruncationSpec trunc, AlgebraPtr alg)
    : Series(make_context(std::move(vars), std::move(trunc)), std::move(alg)) {}

Series Series::one(ContextPtr ctx, AlgebraPtr alg) {
  Series s(std::move(ctx), std::move(alg));
  s.accumulate(Exponent(s.vars().size(), 0), BigRational(1));
  return s;
}

Series Series::monomial(ContextPtr ctx, AlgebraPtr alg, const std::map<std::string, int>& exps,
                        const BigRational& c) {
  Series s(std::move(ctx), std::move(alg));
  s.accumulate(s.exponent(exps), c);
  return s;
}

Series::Exponent Series::exponent(const std::map<std::string, int>& named) const {
  Exponent e(vars().size(), 0);
  for (const auto& [n, k] : named) e[vars().slot(n)] = k;
  return e;
}

std::map<std::string, int> Series::named(const Exponent& e) const {
  std::map<std::string, int> m;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) m[vars().name(i)] = e[i];
  return m;
}

void Series::accumulate(const Exponent& e, const CohomElement& c) {
  if (c.is_zero()) return;
  if (e.size() != vars().size()) throw VarMismatch("exponent arity mismatch");
  if (!same_algebra(c.algebra(), alg_)) throw AlgebraMismatch("coefficient algebra differs from series algebra");
  if (!ctx_->admits(e)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Series::accumulate(const Exponent& e, const BigRational& c) {
  accumulate(e, CohomElement(alg_, c));
}

CohomElement Series::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  if (it == terms_.end()) return CohomElement(alg_);
  return it->second;
}

CohomElement Series::coefficient(const std::map<std::string, int>& named) const {
  return coefficient(exponent(named));
}

BigRational Series::scalar(const std::map<std::string, int>& named) const {
  return coefficient(named).scalar_part();
}

bool Series::operator==(const Series& o) const {
  return *ctx_ == *o.ctx_ && same_algebra(alg_, o.alg_) && terms_ == o.terms_;
}

std::string Series::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) os << "*" << vars().name(i) << (e[i] == 1 ? "" : "^" + std::to_string(e[i]));
  }
  return os.str();
}

namespace {

void require_compatible(const Series& a, const Series& b) {
  if (!(a.vars() == b.vars())) throw VarMismatch("series have different variable tables");
  if (!(a.trunc() == b.trunc())) throw TruncMismatch("series have different truncation specs");
  if (!same_algebra(a.algebra(), b.algebra())) throw AlgebraMismatch("series have different coefficient algebras");
}

} // namespace

Series add(const Series& a, const Series& b) {
  require_compatible(a, b);
  Series r = a;
  for (const auto& [e, c] : b.terms()) r.accumulate(e, c);
  return r;
}

Series neg(const Series& a) { return scale(a, BigRational(-1)); }

Series sub(const Series& a, const Series& b) { return add(a, neg(b)); }

Series scale(const Series& a, const CohomElement& c) {
  Series r(a.context(), a.algebra());
  for (const auto& [e, x] : a.terms()) r.accumulate(e, cmul(x, c));
  return r;
}

Series scale(const Series& a, const BigRational& c) {
  Series r(a.context(), a.algebra());
  if (c == 0) return r;
  for (const auto& [e, x] : a.terms()) r.accumulate(e, x * c);
  return r;
}

Series mul(const Series& a, const Series& b) {
  require_compatible(a, b);
  Series r(a.context(), a.algebra());
  const auto& ctx = *a.context();
  const int cap = a.trunc().maxTotalDegQ;
  std::vector<std::pair<int, const Series::TermMap::value_type*>> bt;
  bt.reserve(b.terms().size());
  for (const auto& t : b.terms()) bt.emplace_back(ctx.q_degree(t.first), &t);
  std::sort(bt.begin(), bt.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Series::Exponent e(a.vars().size());
  for (const auto& [ea, ca] : a.terms()) {
    const int da = ctx.q_degree(ea);
    for (const auto& [db, tb] : bt) {
      if (da + db > cap) break;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + tb->first[i];
      if (!ctx.admits(e)) continue;
      r.accumulate(e, cmul(ca, tb->second));
    }
  }
  return r;
}

Series hadamard_q(const Series& a, const Series& b, const std::vector<std::string>& which) {
  require_compatible(a, b);
  if (which.empty()) throw VarMismatch("hadamard_q needs at least one variable");
  std::vector<std::size_t> slots;
  for (const auto& n : which) {
    auto s = a.vars().slot(n);
    if (!a.vars().is_deformation(s)) throw VarMismatch("hadamard variable must be a deformation var: " + n);
    slots.push_back(s);
  }
  auto key = [&](const Series::Exponent& e) {
    std::vector<int> k;
    k.reserve(slots.size());
    for (auto s : slots) k.push_back(e[s]);
    return k;
  };
  std::map<std::vector<int>, std::vector<const Series::TermMap::value_type*>> bk;
  for (const auto& t : b.terms()) bk[key(t.first)].push_back(&t);
  Series r(a.context(), a.algebra());
  Series::Exponent e(a.vars().size());
  for (const auto& [ea, ca] : a.terms()) {
    auto it = bk.find(key(ea));
    if (it == bk.end()) continue;
    for (const auto* tb : it->second) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + tb->first[i];
      for (auto s : slots) e[s] = ea[s];
      if (!r.admits(e)) continue;
      r.accumulate(e, cmul(ca, tb->second));
    }
  }
  return r;
}

Series constant_term_y(const Series& a, const std::string& y) {
  auto ys = a.vars().find(y);
  if (!ys || !a.vars().is_laurent(*ys)) throw VarMismatch("not a laurent variable: " + y);
  auto ls = a.vars().log_slot_for(*ys);
  auto trunc = a.trunc();
  trunc.windows.erase(y);
  Series r(make_context(a.vars().without(y), std::move(trunc)), a.algebra());
  for (const auto& [e, c] : a.terms()) {
    if (e[*ys] != 0) continue;
    if (ls && e[*ls] != 0)
      throw LogResidue("log symbol of " + y + " survives in the constant term");
    Series::Exponent f;
    f.reserve(e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != *ys && (!ls || i != *ls)) f.push_back(e[i]);
    r.accumulate(f, c);
  }
  return r;
}

Series expand_neg_binomial(ContextPtr ctx, AlgebraPtr alg, const std::map<std::string, int>& u,
                           int k, const BigRational& c) {
  if (k < 0) throw std::invalid_argument("expand_neg_binomial needs k >= 0");
  Series r(std::move(ctx), std::move(alg));
  auto ue = r.exponent(u);
  bool trivial = true;
  for (std::size_t i = 0; i < ue.size(); ++i) {
    if (r.vars().is_log(i) && ue[i] != 0) throw NonMonomialImage("log symbol in binomial base");
    if (ue[i] != 0) trivial = false;
  }
  if (trivial) throw std::invalid_argument("expand_neg_binomial of a constant does not terminate");
  Series::Exponent e(ue.size(), 0);
  BigRational cp = 1;
  for (long d = 0; r.admits(e); ++d) {
    r.accumulate(e, BigRational(binomial(d + k, k)) * cp);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += ue[i];
    cp *= c;
  }
  return r;
}

Series theta(const Series& a, const std::string& var) {
  auto s = a.vars().find(var);
  if (!s || a.vars().is_log(*s)) throw VarMismatch("theta needs a series variable: " + var);
  auto ls = a.vars().log_slot_for(*s);
  Series r(a.context(), a.algebra());
  for (const auto& [e, c] : a.terms()) {
    if (e[*s] != 0) r.accumulate(e, c * BigRational(e[*s]));
    if (ls && e[*ls] > 0) {
      auto f = e;
      f[*ls] -= 1;
      r.accumulate(f, c * BigRational(e[*ls]));
    }
  }
  return r;
}

Series retruncate(const Series& a, ContextPtr ctx) {
  if (!(ctx->vars() == a.vars())) throw VarMismatch("retruncate cannot change variables");
  Series r(std::move(ctx), a.algebra());
  for (const auto& [e, c] : a.terms()) r.accumulate(e, c);
  return r;
}

Series map_coefficients(const Series& a, AlgebraPtr target,
                        const std::function<CohomElement(const CohomElement&)>& fn) {
  Series r(a.context(), std::move(target));
  for (const auto& [e, c] : a.terms()) r.accumulate(e, fn(c));
  return r;
}

Series exp_nilpotent(const Series& a) {
  Series sum = Series::one(a.context(), a.algebra());
  Series term = sum;
  for (long k = 1;; ++k) {
    term = scale(mul(term, a), BigRational(1, k));
    if (term.is_zero()) break;
    if (k > 4096) throw std::domain_error("exp_nilpotent: argument is not nilpotent");
    sum = add(sum, term);
  }
  return sum;
}

Series substitute(const Series& a, const std::map<std::string, MonomialImage>& images,
                  ContextPtr target, bool strict) {
  const auto& sv = a.vars();
  const auto& tv = target->vars();
  for (const auto& [n, img] : images) {
    auto s = sv.find(n);
    if (!s || sv.is_log(*s)) throw VarMismatch("cannot substitute for " + n);
    if (img.coeff == 0) throw NonMonomialImage("zero image for " + n);
    for (const auto& [v, k] : img.exps) {
      auto t = tv.find(v);
      if (t && tv.is_log(*t)) throw NonMonomialImage("log symbol in image of " + n);
    }
  }
  Series r(target, a.algebra());
  for (const auto& [e, c] : a.terms()) {
    BigRational coeff = 1;
    std::map<std::string, int> acc;  // target var name -> exponent
    // log part as a list of (target log slot -> exponent) after expansion
    std::vector<std::pair<std::map<std::size_t, int>, BigRational>> logs{{{}, BigRational(1)}};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (sv.is_log(i)) continue;
      const auto& n = sv.name(i);
      auto it = images.find(n);
      if (it == images.end()) {
        acc[n] += e[i];
        continue;
      }
      BigRational f;
      mpz_class num = it->second.coeff.get_num(), den = it->second.coeff.get_den();
      mpz_class pn, pd;
      unsigned long ak = static_cast<unsigned long>(std::abs(e[i]));
      mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), ak);
      mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), ak);
      f = e[i] > 0 ? BigRational(pn, pd) : BigRational(pd, pn);
      f.canonicalize();
      coeff *= f;
      for (const auto& [v, k] : it->second.exps) acc[v] += k * e[i];
    }
    for (std::size_t i = sv.n_def() + sv.n_laurent(); i < e.size(); ++i) {
      if (e[i] == 0) continue;
      const auto& var = sv.name(sv.var_slot_of_log(i));
      auto it = images.find(var);
      std::vector<std::pair<std::size_t, int>> form;  // L_var -> sum m_v L_v
      if (it == images.end()) {
        auto tvs = tv.find(var);
        auto tl = tvs ? tv.log_slot_for(*tvs) : std::nullopt;
        if (!tl) throw VarMismatch("target has no log symbol for " + var);
        form.emplace_back(*tl, 1);
      } else {
        if (it->second.coeff != 1)
          throw NonMonomialImage("log of a non-unit coefficient in image of " + var);
        for (const auto& [v, k] : it->second.exps) {
          if (k == 0) continue;
          auto tvs = tv.find(v);
          auto tl = tvs ? tv.log_slot_for(*tvs) : std::nullopt;
          if (!tl) throw VarMismatch("target has no log symbol for " + v);
          form.emplace_back(*tl, k);
        }
      }
      // multiply the current log polynomial by form^e[i]
      for (int p = 0; p < e[i]; ++p) {
        std::vector<std::pair<std::map<std::size_t, int>, BigRational>> next;
        for (const auto& [m, cm] : logs)
          for (const auto& [ts, k] : form) {
            auto m2 = m;
            m2[ts] += 1;
            next.emplace_back(std::move(m2), cm * k);
          }
        logs = std::move(next);
      }
    }
    Series::Exponent base(tv.size(), 0);
    for (const auto& [v, k] : acc) {
      auto t = tv.find(v);
      if (!t) {
        if (k != 0) throw VarMismatch("substitution leaves variable " + v + " outside the target");
        continue;
      }
      base[*t] = k;
    }
    for (const auto& [m, cm] : logs) {
      auto f = base;
      for (const auto& [ts, k] : m) f[ts] += k;
      if (!target->admits(f)) {
        if (strict) throw WindowOverflow("substituted exponent outside target truncation");
        continue;
      }
      r.accumulate(f, c * (coeff * cm));
    }
  }
  return r;
}

std::optional<Mismatch> first_difference(const Series& a, const Series& b) {
  if (!(a.vars() == b.vars())) throw VarMismatch("cannot compare series with different variables");
  const auto& ctx = *a.context();
  std::optional<Series::Exponent> best;
  auto consider = [&](const Series::Exponent& e) {
    if (!best) {
      best = e;
      return;
    }
    int d1 = ctx.q_degree(e), d0 = ctx.q_degree(*best);
    if (d1 < d0 || (d1 == d0 && e < *best)) best = e;
  };
  for (const auto& [e, c] : a.terms()) {
    auto it = b.terms().find(e);
    if (it == b.terms().end() || !(it->second == c)) consider(e);
  }
  for (const auto& [e, c] : b.terms())
    if (!a.terms().count(e)) consider(e);
  if (!best) return std::nullopt;
  auto ca = a.coefficient(*best), cb = b.coefficient(*best);
  Mismatch m;
  m.exponent = a.named(*best);
  const auto& alg = ca.is_zero() ? cb.algebra() : ca.algebra();
  std::set<std::uint32_t> idx;
  for (const auto& t : ca.terms()) idx.insert(t.first);
  for (const auto& t : cb.terms()) idx.insert(t.first);
  for (auto i : idx) {
    if (ca.extract_index(i) != cb.extract_index(i)) {
      m.monomial = alg ? alg->monomial_name(i) : "1";
      m.lhs = ca.extract_index(i).get_str();
      m.rhs = cb.extract_index(i).get_str();
      break;
    }
  }
  return m;
}

std::optional<Series::Exponent> first_log_term(const Series& a, const std::string& var) {
  auto s = a.vars().slot(var);
  auto ls = a.vars().log_slot_for(s);
  if (!ls) return std::nullopt;
  for (const auto& [e, c] : a.terms())
    if (e[*ls] != 0 && e[s] == 0) return e;
  return std::nullopt;
}

} // namespace tyurin
