#include "tyurin/cohomology.hpp"

#include "tyurin/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tyurin {

NilpotentAlgebra::NilpotentAlgebra(std::vector<Generator> gens) : gens_(std::move(gens)) {
  std::set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.order < 1) throw std::invalid_argument("nilpotency order must be >= 1: " + g.name);
    if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator " + g.name);
    stride_.push_back(static_cast<std::uint32_t>(size_));
    size_ *= static_cast<std::size_t>(g.order);
    if (size_ > (1u << 24)) throw std::invalid_argument("cohomology algebra too large");
  }
}

std::shared_ptr<const NilpotentAlgebra> NilpotentAlgebra::make(std::vector<Generator> gens) {
  return std::make_shared<const NilpotentAlgebra>(std::move(gens));
}

std::shared_ptr<const NilpotentAlgebra> NilpotentAlgebra::trivial() {
  static const auto t = make({});
  return t;
}

std::optional<std::size_t> NilpotentAlgebra::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

std::size_t NilpotentAlgebra::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw UnknownGenerator("unknown generator " + name);
  return *i;
}

std::vector<int> NilpotentAlgebra::digits(std::uint32_t idx) const {
  std::vector<int> e(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    e[i] = static_cast<int>(idx % static_cast<std::uint32_t>(gens_[i].order));
    idx /= static_cast<std::uint32_t>(gens_[i].order);
  }
  return e;
}

std::optional<std::uint32_t> NilpotentAlgebra::encode(const std::vector<int>& e) const {
  if (e.size() != gens_.size()) throw std::invalid_argument("monomial arity mismatch");
  std::uint32_t idx = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0) throw std::invalid_argument("negative exponent in cohomology monomial");
    if (e[i] >= gens_[i].order) return std::nullopt;
    idx += static_cast<std::uint32_t>(e[i]) * stride_[i];
  }
  return idx;
}

std::optional<std::uint32_t> NilpotentAlgebra::mul(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t ra = a, rb = b;
  for (const auto& g : gens_) {
    auto k = static_cast<std::uint32_t>(g.order);
    if (ra % k + rb % k >= k) return std::nullopt;
    ra /= k;
    rb /= k;
  }
  return a + b;
}

int NilpotentAlgebra::degree(std::uint32_t idx) const {
  int d = 0;
  for (int e : digits(idx)) d += e;
  return d;
}

std::string NilpotentAlgebra::monomial_name(std::uint32_t idx) const {
  auto e = digits(idx);
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += gens_[i].name;
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace {

void require_same(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!same_algebra(a, b)) throw AlgebraMismatch("cohomology elements live in different algebras");
}

void merge_sorted(std::vector<CohomElement::Term>& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<CohomElement::Term> out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
  v = std::move(out);
}

} // namespace

CohomElement::CohomElement(AlgebraPtr alg, const BigRational& c) : alg_(std::move(alg)) {
  if (c != 0) terms_.emplace_back(0u, c);
}

CohomElement CohomElement::generator(AlgebraPtr alg, const std::string& name) {
  std::vector<int> e(alg->generators().size(), 0);
  e[alg->index_of(name)] = 1;
  return monomial(std::move(alg), e);
}

CohomElement CohomElement::monomial(AlgebraPtr alg, const std::vector<int>& e,
                                    const BigRational& c) {
  CohomElement r(alg);
  auto idx = alg->encode(e);
  if (idx && c != 0) r.terms_.emplace_back(*idx, c);
  return r;
}

CohomElement CohomElement::from_terms(AlgebraPtr alg, std::vector<Term> terms) {
  CohomElement r(std::move(alg));
  for (const auto& t : terms)
    if (t.first >= r.alg_->basis_size()) throw std::out_of_range("monomial index out of range");
  merge_sorted(terms);
  r.terms_ = std::move(terms);
  return r;
}

BigRational CohomElement::scalar_part() const {
  if (!terms_.empty() && terms_.front().first == 0) return terms_.front().second;
  return 0;
}

bool CohomElement::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first == 0);
}

BigRational CohomElement::extract(const std::vector<int>& exps) const {
  auto idx = alg_->encode(exps);
  if (!idx) return 0;
  return extract_index(*idx);
}

BigRational CohomElement::extract_index(std::uint32_t idx) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), idx,
                             [](const Term& t, std::uint32_t i) { return t.first < i; });
  if (it != terms_.end() && it->first == idx) return it->second;
  return 0;
}

CohomElement CohomElement::operator-() const {
  CohomElement r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

CohomElement& CohomElement::operator+=(const CohomElement& o) {
  if (o.terms_.empty()) {
    if (!alg_) alg_ = o.alg_;
    return *this;
  }
  if (!alg_) alg_ = o.alg_;
  require_same(alg_, o.alg_);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      BigRational s = terms_[i].second + o.terms_[j].second;
      if (s != 0) out.emplace_back(terms_[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

CohomElement& CohomElement::operator-=(const CohomElement& o) { return *this += -o; }

CohomElement& CohomElement::operator*=(const BigRational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

CohomElement operator*(const CohomElement& a, const CohomElement& b) { return cmul(a, b); }

CohomElement cmul(const CohomElement& a, const CohomElement& b) {
  if (a.is_zero() || b.is_zero()) {
    if (a.algebra() && b.algebra()) require_same(a.algebra(), b.algebra());
    return CohomElement(a.algebra() ? a.algebra() : b.algebra());
  }
  require_same(a.algebra(), b.algebra());
  const auto& alg = *a.algebra();
  if (a.is_scalar()) return b * a.scalar_part();
  if (b.is_scalar()) return a * b.scalar_part();
  std::vector<CohomElement::Term> acc;
  acc.reserve(a.terms().size() * b.terms().size());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms())
      if (auto k = alg.mul(ia, ib)) acc.emplace_back(*k, ca * cb);
  return CohomElement::from_terms(a.algebra(), std::move(acc));
}

CohomElement CohomElement::inverse() const {
  BigRational c = scalar_part();
  if (c == 0) throw std::domain_error("cohomology element is not invertible: " + str());
  // (c + n)^{-1} = c^{-1} sum_k (-n/c)^k
  CohomElement n = *this - CohomElement(alg_, c);
  BigRational ci = 1 / c;
  CohomElement x = n * (-ci);
  CohomElement term(alg_, BigRational(1));
  CohomElement sum = term;
  while (true) {
    term = cmul(term, x);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * ci;
}

CohomElement CohomElement::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  CohomElement r(alg_, BigRational(1));
  for (int i = 0; i < k; ++i) r = cmul(r, *this);
  return r;
}

bool CohomElement::operator==(const CohomElement& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  if (!same_algebra(alg_, o.alg_)) return false;
  return terms_ == o.terms_;
}

std::string CohomElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (idx == 0) {
      os << c.get_str();
    } else if (c == 1) {
      os << alg_->monomial_name(idx);
    } else {
      os << c.get_str() << "*" << alg_->monomial_name(idx);
    }
  }
  return os.str();
}

int nilpotency_index(const CohomElement& x) {
  if (x.is_zero()) return 0;
  if (x.scalar_part() != 0) throw std::domain_error("element is not nilpotent");
  CohomElement p = x;
  int k = 1;
  while (!p.is_zero()) {
    p = cmul(p, x);
    ++k;
  }
  return k;
}

AlgebraPtr remove_generator(const AlgebraPtr& alg, const std::string& g) {
  auto gi = alg->index_of(g);
  auto gens = alg->generators();
  gens.erase(gens.begin() + static_cast<long>(gi));
  return NilpotentAlgebra::make(std::move(gens));
}

CohomElement subst_generator(const CohomElement& a, const std::string& g,
                             const std::vector<std::pair<std::string, BigRational>>& image,
                             AlgebraPtr target) {
  const auto& src = a.algebra();
  auto gi = src->index_of(g);
  if (!target) target = remove_generator(src, g);
  // map surviving generators of the source onto the target by name
  std::vector<std::size_t> to_target(src->generators().size());
  for (std::size_t i = 0; i < src->generators().size(); ++i) {
    if (i == gi) continue;
    const auto& name = src->generators()[i].name;
    auto t = target->find(name);
    if (!t) throw UnknownGenerator("target algebra lacks generator " + name);
    to_target[i] = *t;
  }
  CohomElement img(target);
  for (const auto& [name, c] : image) {
    if (name == g) throw UnknownGenerator("image of " + g + " refers to itself");
    img += CohomElement::generator(target, name) * c;
  }
  std::vector<CohomElement> powers{CohomElement(target, BigRational(1))};
  CohomElement out(target);
  for (const auto& [idx, c] : a.terms()) {
    auto e = src->digits(idx);
    std::vector<int> te(target->generators().size(), 0);
    bool dead = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i == gi) continue;
      te[to_target[i]] = e[i];
      if (e[i] >= target->generators()[to_target[i]].order) dead = true;
    }
    if (dead) continue;
    while (static_cast<int>(powers.size()) <= e[gi]) powers.push_back(cmul(powers.back(), img));
    out += cmul(CohomElement::monomial(target, te, c), powers[static_cast<std::size_t>(e[gi])]);
  }
  return out;
}

CohomElement rising(const CohomElement& c, long n) {
  CohomElement r(c.algebra(), BigRational(1));
  for (long k = 1; k <= n; ++k) r = cmul(r, c + CohomElement(c.algebra(), BigRational(k)));
  return r;
}

} // namespace tyurin
