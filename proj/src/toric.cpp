#include "tyurin/toric.hpp"

#include "tyurin/errors.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <set>

namespace tyurin {

ClassVec ToricCI::divisor(int j) const { return matrix.at(static_cast<std::size_t>(j)); }

namespace {

ClassVec sum_over(const ToricCI& t, const std::vector<int>& idx) {
  ClassVec c(static_cast<std::size_t>(t.r), 0);
  for (int j : idx) c = add_classes(c, t.divisor(j));
  return c;
}

} // namespace

ClassVec ToricCI::rho(int l) const { return sum_over(*this, groups.at(static_cast<std::size_t>(l))); }
ClassVec ToricCI::rho01() const { return sum_over(*this, s1); }
ClassVec ToricCI::rho02() const { return sum_over(*this, s2); }

ClassVec ToricCI::anticanonical() const {
  std::vector<int> all(static_cast<std::size_t>(m()));
  for (int j = 0; j < m(); ++j) all[static_cast<std::size_t>(j)] = j;
  return sum_over(*this, all);
}

std::vector<int> ToricCI::a() const { return rho01(); }
std::vector<int> ToricCI::e() const { return rho02(); }

int ToricCI::support(int i) const {
  int n = 0;
  for (const auto& row : matrix)
    if (row.at(static_cast<std::size_t>(i)) != 0) ++n;
  return n;
}

int ToricCI::dimension() const { return m() - r - (s() + 1); }

int pairing(const ClassVec& c, const DegreeVec& d) {
  if (c.size() != d.size()) throw std::invalid_argument("pairing arity mismatch");
  int s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * d[i];
  return s;
}

ClassVec add_classes(const ClassVec& a, const ClassVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("class arity mismatch");
  ClassVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

std::vector<DegreeVec> degree_box(int r, int maxTotal) {
  std::vector<DegreeVec> out;
  if (r == 0) {
    out.emplace_back();
    return out;
  }
  for (int tot = 0; tot <= maxTotal; ++tot) {
    // lexicographically descending compositions of tot into r parts
    DegreeVec d(static_cast<std::size_t>(r), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == r - 1) {
        d[static_cast<std::size_t>(i)] = left;
        out.push_back(d);
        return;
      }
      for (int k = left; k >= 0; --k) {
        d[static_cast<std::size_t>(i)] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, tot);
  }
  return out;
}

std::vector<Violation> validate(const ToricCI& t) {
  std::vector<Violation> v;
  if (t.r < 1) v.push_back({"r", "rank must be at least 1"});
  for (int j = 0; j < t.m(); ++j) {
    const auto& row = t.matrix[static_cast<std::size_t>(j)];
    std::string f = "matrix[" + std::to_string(j) + "]";
    if (static_cast<int>(row.size()) != t.r) {
      v.push_back({f, "expected " + std::to_string(t.r) + " entries"});
      continue;
    }
    for (int i = 0; i < t.r; ++i)
      if (row[static_cast<std::size_t>(i)] < 0)
        v.push_back({f + "[" + std::to_string(i) + "]", "negative entry"});
  }
  if (t.m() == 0) v.push_back({"matrix", "no divisors"});
  if (t.groups.empty()) v.push_back({"groups", "empty nef partition"});
  std::vector<int> seen(static_cast<std::size_t>(t.m()), 0);
  for (std::size_t l = 0; l < t.groups.size(); ++l) {
    std::string f = "groups[" + std::to_string(l) + "]";
    if (t.groups[l].empty()) v.push_back({f, "empty group"});
    for (int j : t.groups[l]) {
      if (j < 0 || j >= t.m()) {
        v.push_back({f, "divisor index " + std::to_string(j) + " out of range"});
        continue;
      }
      if (seen[static_cast<std::size_t>(j)]++) v.push_back({f, "divisor " + std::to_string(j) + " in two groups"});
    }
  }
  for (int j = 0; j < t.m(); ++j)
    if (!seen[static_cast<std::size_t>(j)]) v.push_back({"groups", "uncovered divisor " + std::to_string(j)});
  if (t.s1.empty()) v.push_back({"refinement[0]", "S1 is empty"});
  if (t.s2.empty()) v.push_back({"refinement[1]", "S2 is empty"});
  if (!t.groups.empty()) {
    std::multiset<int> g0(t.groups[0].begin(), t.groups[0].end()), ref;
    ref.insert(t.s1.begin(), t.s1.end());
    ref.insert(t.s2.begin(), t.s2.end());
    if (g0 != ref) v.push_back({"refinement", "S1 and S2 must split G0 disjointly"});
  }
  if (static_cast<int>(t.qNames.size()) != t.r) v.push_back({"qNames", "expected one name per class"});
  if (static_cast<int>(t.pNames.size()) != t.r) v.push_back({"pNames", "expected one name per class"});
  std::set<std::string> names;
  for (const auto& n : t.qNames)
    if (n.empty() || !names.insert(n).second) v.push_back({"qNames", "empty or duplicate name '" + n + "'"});
  for (const auto& n : t.pNames)
    if (n.empty() || !names.insert(n).second) v.push_back({"pNames", "empty or duplicate name '" + n + "'"});
  if (v.empty()) {
    for (int i = 0; i < t.r; ++i)
      if (t.support(i) == 0) v.push_back({"matrix", "class " + std::to_string(i) + " meets no divisor"});
  }
  return v;
}

namespace {

std::vector<std::string> numbered(const std::string& p, int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(p + std::to_string(i));
  return v;
}

void require_valid(const ToricCI& t) {
  auto v = validate(t);
  if (!v.empty()) throw std::logic_error("registry entry " + t.label + " invalid: " + v[0].message);
}

ToricCI lift_named(const ToricCI& base, const std::string& qn, const std::string& pn) {
  ToricCI t;
  t.r = base.r + 1;
  for (auto row : base.matrix) {
    row.push_back(0);
    t.matrix.push_back(row);
  }
  ClassVec fiber(static_cast<std::size_t>(t.r), 0);
  fiber.back() = 1;
  const int ya = base.m(), yb = base.m() + 1;
  t.matrix.push_back(fiber);
  t.matrix.push_back(fiber);
  auto g0 = base.s1;
  g0.push_back(ya);
  auto g1 = base.s2;
  g1.push_back(yb);
  t.groups = {g0, g1};
  for (std::size_t l = 1; l < base.groups.size(); ++l) t.groups.push_back(base.groups[l]);
  t.s1 = base.s1;
  t.s2 = {ya};
  t.qNames = base.qNames;
  t.qNames.push_back(qn);
  t.pNames = base.pNames;
  t.pNames.push_back(pn);
  t.base = std::make_shared<const ToricCI>(base);
  return t;
}

ToricCI projective_space(int n, int n1) {
  ToricCI t;
  t.r = 1;
  t.matrix.assign(static_cast<std::size_t>(n + 1), {1});
  std::vector<int> all;
  for (int j = 0; j <= n; ++j) all.push_back(j);
  t.groups = {all};
  for (int j = 0; j < n1; ++j) t.s2.push_back(j);
  for (int j = n1; j <= n; ++j) t.s1.push_back(j);
  t.qNames = {"q1"};
  t.pNames = {"H"};
  t.label = "P" + std::to_string(n);
  return t;
}

} // namespace

ToricCI quintic_p4() {
  ToricCI t;
  t.r = 1;
  t.matrix.assign(5, {1});
  t.groups = {{0, 1, 2, 3, 4}};
  t.s1 = {3};
  t.s2 = {0, 1, 2, 4};
  t.qNames = {"q1"};
  t.pNames = {"H"};
  t.label = "quintic_p4";
  require_valid(t);
  return t;
}

ToricCI lift_to_product_p1(const ToricCI& base) {
  bool hyper = base.pNames.size() == 1 && base.pNames[0] == "H";
  auto t = lift_named(base, "q0", hyper ? "P" : "p0");
  t.label = base.label + "_x_p1";
  return t;
}

ToricCI swap_refinement(const ToricCI& t) {
  ToricCI s = t;
  std::swap(s.s1, s.s2);
  s.label = t.label + "_swapped";
  return s;
}

ToricCI pn_x_p1(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw UnknownExample("pn_x_p1 needs n1, n2 >= 1");
  const int n = n1 + n2 - 1;
  auto base = projective_space(n, n1);
  auto t = lift_to_product_p1(base);
  t.label = "pn_x_p1(" + std::to_string(n1) + "," + std::to_string(n2) + ")";
  require_valid(t);
  return t;
}

ToricCI p1_power(int n) {
  if (n < 1) throw UnknownExample("p1_power needs n >= 1");
  ToricCI base;
  base.r = n;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < n; ++i) {
      ClassVec row(static_cast<std::size_t>(n), 0);
      row[static_cast<std::size_t>(i)] = 1;
      base.matrix.push_back(row);
    }
  std::vector<int> all;
  for (int j = 0; j < 2 * n; ++j) all.push_back(j);
  base.groups = {all};
  for (int i = 0; i < n; ++i) {
    base.s1.push_back(i);
    base.s2.push_back(n + i);
  }
  base.qNames = numbered("q", n);
  base.pNames = numbered("p", n);
  base.label = "p1_power_base(" + std::to_string(n) + ")";
  auto t = lift_to_product_p1(base);
  t.label = "p1_power(" + std::to_string(n) + ")";
  require_valid(t);
  return t;
}

ToricCI example(const std::string& name) {
  if (name == "quintic_p4") return quintic_p4();
  if (name == "conifold_p4xp1") {
    auto t = lift_to_product_p1(quintic_p4());
    t.label = "conifold_p4xp1";
    require_valid(t);
    return t;
  }
  static const std::regex pn(R"(pn_x_p1\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  static const std::regex pp(R"(p1_power\(\s*(\d+)\s*\))");
  std::smatch mm;
  if (std::regex_match(name, mm, pn)) return pn_x_p1(std::stoi(mm[1]), std::stoi(mm[2]));
  if (std::regex_match(name, mm, pp)) return p1_power(std::stoi(mm[1]));
  throw UnknownExample("unknown example '" + name + "'");
}

std::vector<std::string> example_names() {
  return {"quintic_p4", "conifold_p4xp1", "pn_x_p1(2,3)", "p1_power(2)", "p1_power(3)"};
}

ToricCI both_blowup_base(const ToricCI& t) { return t.base ? *t.base : t; }

} // namespace tyurin
