#include "tyurin/mpoly.hpp"

#include "tyurin/errors.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tyurin {

namespace {

struct Interner {
  std::mutex mu;
  std::unordered_map<std::string, VarId> ids;
  std::deque<std::string> names;
};

Interner& interner() {
  static Interner in;
  return in;
}

} // namespace

VarId intern(const std::string& name) {
  auto& in = interner();
  std::lock_guard<std::mutex> lock(in.mu);
  auto it = in.ids.find(name);
  if (it != in.ids.end()) return it->second;
  VarId id = static_cast<VarId>(in.names.size());
  in.names.push_back(name);
  in.ids.emplace(name, id);
  return id;
}

const std::string& var_name(VarId id) {
  auto& in = interner();
  std::lock_guard<std::mutex> lock(in.mu);
  return in.names.at(static_cast<std::size_t>(id));
}

Mono Mono::var(VarId v, int k) {
  Mono m;
  if (k != 0) m.e.emplace_back(v, k);
  return m;
}

int Mono::exp(VarId v) const {
  for (const auto& [id, k] : e)
    if (id == v) return k;
  return 0;
}

Mono Mono::operator*(const Mono& o) const {
  Mono r;
  std::size_t i = 0, j = 0;
  while (i < e.size() || j < o.e.size()) {
    if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first)) {
      r.e.push_back(e[i++]);
    } else if (i == e.size() || o.e[j].first < e[i].first) {
      r.e.push_back(o.e[j++]);
    } else {
      int k = e[i].second + o.e[j].second;
      if (k != 0) r.e.emplace_back(e[i].first, k);
      ++i;
      ++j;
    }
  }
  return r;
}

Mono Mono::inverse() const {
  Mono r = *this;
  for (auto& p : r.e) p.second = -p.second;
  return r;
}

std::string Mono::str() const {
  if (e.empty()) return "1";
  std::string s;
  for (const auto& [id, k] : e) {
    if (!s.empty()) s += "*";
    s += var_name(id);
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s;
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
  std::size_t i = 0, j = 0;
  while (i < a.e.size() || j < b.e.size()) {
    VarId ia = i < a.e.size() ? a.e[i].first : INT32_MAX;
    VarId ib = j < b.e.size() ? b.e[j].first : INT32_MAX;
    VarId v = std::min(ia, ib);
    int ka = ia == v ? a.e[i].second : 0;
    int kb = ib == v ? b.e[j].second : 0;
    if (ka != kb) return ka < kb;
    if (ia == v) ++i;
    if (ib == v) ++j;
  }
  return false;
}

MPoly::MPoly(const BigRational& c) {
  if (c != 0) terms_.emplace(Mono{}, c);
}

MPoly MPoly::var(const std::string& name, int k) { return monomial(Mono::var(intern(name), k)); }

MPoly MPoly::monomial(const Mono& m, const BigRational& c) {
  MPoly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::pair<Mono, BigRational> MPoly::leading() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

std::vector<VarId> MPoly::vars() const {
  std::set<VarId> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [id, k] : m.e) s.insert(id);
  return {s.begin(), s.end()};
}

int MPoly::min_exp(VarId v) const {
  int r = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int k = m.exp(v);
    r = first ? k : std::min(r, k);
    first = false;
  }
  return r;
}

int MPoly::max_exp(VarId v) const {
  int r = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int k = m.exp(v);
    r = first ? k : std::max(r, k);
    first = false;
  }
  return r;
}

void MPoly::add_term(const Mono& m, const BigRational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MPoly MPoly::pow(int k) const {
  if (k < 0) {
    if (terms_.size() != 1) throw std::domain_error("negative power of a non-monomial polynomial");
    const auto& [m, c] = *terms_.begin();
    Mono mi = m.inverse();
    Mono acc;
    for (int i = 0; i < -k; ++i) acc = acc * mi;
    BigRational ci = 1;
    for (int i = 0; i < -k; ++i) ci /= c;
    return monomial(acc, ci);
  }
  MPoly r(BigRational(1)), base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

std::string monomial_str(const Mono& m, const BigRational& c) {
  if (m.is_one()) return c.get_str();
  if (c == 1) return m.str();
  if (c == -1) return "-" + m.str();
  return c.get_str() + "*" + m.str();
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto t = monomial_str(it->first, it->second);
    if (s.empty()) {
      s = t;
    } else if (t[0] == '-') {
      s += " - " + t.substr(1);
    } else {
      s += " + " + t;
    }
  }
  return s;
}

RationalFunc::RationalFunc(const MPoly& num, const MPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DegenerateParameters("rational function with zero denominator");
}

RationalFunc operator+(const RationalFunc& a, const RationalFunc& b) {
  if (a.den_ == b.den_) return RationalFunc(a.num_ + b.num_, a.den_);
  return RationalFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunc operator-(const RationalFunc& a, const RationalFunc& b) { return a + (-b); }

RationalFunc operator*(const RationalFunc& a, const RationalFunc& b) {
  return RationalFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunc operator/(const RationalFunc& a, const RationalFunc& b) {
  if (b.is_zero()) throw DegenerateParameters("division by a zero rational function");
  return RationalFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunc RationalFunc::pow(int k) const {
  if (k >= 0) return RationalFunc(num_.pow(k), den_.pow(k));
  if (is_zero()) throw DegenerateParameters("negative power of zero");
  return RationalFunc(den_.pow(-k), num_.pow(-k));
}

bool RationalFunc::operator==(const RationalFunc& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

std::string RationalFunc::str() const {
  if (den_ == MPoly(BigRational(1))) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

// p(images) = A / C over a common denominator
std::pair<MPoly, MPoly> subst_poly(const MPoly& p, const std::map<VarId, RationalFunc>& img) {
  struct Plan {
    int lo, hi;  // exponent range of the variable in p
    const RationalFunc* f;
    std::vector<MPoly> npow, dpow;
  };
  std::map<VarId, Plan> plans;
  for (VarId v : p.vars()) {
    auto it = img.find(v);
    if (it == img.end()) continue;
    Plan pl{std::min(0, p.min_exp(v)), std::max(0, p.max_exp(v)), &it->second, {}, {}};
    const int span = pl.hi - pl.lo;
    pl.npow.push_back(MPoly(BigRational(1)));
    pl.dpow.push_back(MPoly(BigRational(1)));
    for (int k = 1; k <= span; ++k) {
      pl.npow.push_back(pl.npow.back() * it->second.num());
      pl.dpow.push_back(pl.dpow.back() * it->second.den());
    }
    plans.emplace(v, std::move(pl));
  }
  MPoly common(BigRational(1));
  for (const auto& [v, pl] : plans) common = common * pl.dpow[pl.hi] * pl.npow[-pl.lo];
  MPoly acc;
  for (const auto& [m, c] : p.terms()) {
    Mono rest;
    MPoly t(c);
    std::map<VarId, int> seen;
    for (const auto& [v, k] : m.e) {
      auto it = plans.find(v);
      if (it == plans.end()) {
        rest = rest * Mono::var(v, k);
        continue;
      }
      seen[v] = k;
    }
    for (const auto& [v, pl] : plans) {
      int k = seen.count(v) ? seen[v] : 0;
      t = t * pl.npow[k - pl.lo] * pl.dpow[pl.hi - k];
    }
    acc += t * MPoly::monomial(rest);
  }
  return {acc, common};
}

std::map<VarId, RationalFunc> image_map(const Identification& ident) {
  std::map<VarId, RationalFunc> m;
  for (const auto& [n, f] : ident)
    if (!m.emplace(intern(n), f).second) throw std::invalid_argument("variable substituted twice: " + n);
  return m;
}

} // namespace

RationalFunc substitute(const RationalFunc& f, const Identification& ident) {
  auto img = image_map(ident);
  auto [an, cn] = subst_poly(f.num(), img);
  auto [ad, cd] = subst_poly(f.den(), img);
  if (ad.is_zero()) throw DegenerateParameters("substitution makes a denominator vanish");
  return RationalFunc(an * cd, cn * ad);
}

RationalFunc substitute(const MPoly& p, const Identification& ident) {
  return substitute(RationalFunc(p), ident);
}

std::optional<std::pair<Mono, BigRational>> monomial_ratio(const RationalFunc& f,
                                                           const RationalFunc& g) {
  if (f.is_zero() || g.is_zero()) return std::nullopt;
  // f/g = (fn*gd)/(fd*gn)
  MPoly n = f.num() * g.den(), d = f.den() * g.num();
  auto [mn, cn] = n.leading();
  auto [md, cd] = d.leading();
  Mono m = mn * md.inverse();
  BigRational c = cn / cd;
  if (!(n == d * MPoly::monomial(m, c))) return std::nullopt;
  return std::make_pair(m, c);
}

} // namespace tyurin
