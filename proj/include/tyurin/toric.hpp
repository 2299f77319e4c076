#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tyurin {

using ClassVec = std::vector<int>;   // coefficients in the nef basis p_1..p_r
using DegreeVec = std::vector<int>;  // d in N^r

// Complete intersection in a toric variety whose curve cone is the standard
// orthant. Divisor indices are 0-based.
struct ToricCI {
  int r = 0;
  std::vector<std::vector<int>> matrix;  // m rows, row j = D_j in the p basis
  std::vector<std::vector<int>> groups;  // nef partition G_0..G_s
  std::vector<int> s1, s2;               // refinement of G_0
  std::vector<std::string> qNames;       // deformation variable per class
  std::vector<std::string> pNames;       // cohomology generator per class
  std::string label;
  std::shared_ptr<const ToricCI> base;   // set by lift_to_product_p1

  int m() const { return static_cast<int>(matrix.size()); }
  int s() const { return static_cast<int>(groups.size()) - 1; }

  ClassVec divisor(int j) const;
  ClassVec rho(int l) const;
  ClassVec rho01() const;
  ClassVec rho02() const;
  ClassVec anticanonical() const;
  std::vector<int> a() const;  // a_i = <rho01, e_i>
  std::vector<int> e() const;  // e_i = <rho02, e_i>
  // number of divisors with nonzero coefficient on class i
  int support(int i) const;
  // dimension of the complete intersection, m - r - (s + 1)
  int dimension() const;
};

struct Violation {
  std::string field;
  std::string message;
};

std::vector<Violation> validate(const ToricCI& t);

int pairing(const ClassVec& c, const DegreeVec& d);
ClassVec add_classes(const ClassVec& a, const ClassVec& b);

// all d in N^r with |d| <= maxTotal, graded then lexicographic
std::vector<DegreeVec> degree_box(int r, int maxTotal);

ToricCI example(const std::string& name);
std::vector<std::string> example_names();

ToricCI quintic_p4();
ToricCI lift_to_product_p1(const ToricCI& base);
ToricCI swap_refinement(const ToricCI& t);
ToricCI pn_x_p1(int n1, int n2);
ToricCI p1_power(int n);

// data whose blow-up-both degeneration accompanies t: the base of a lift,
// otherwise t itself
ToricCI both_blowup_base(const ToricCI& t);

} // namespace tyurin
