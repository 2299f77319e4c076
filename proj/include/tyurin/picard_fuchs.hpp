#pragma once

#include "tyurin/check.hpp"
#include "tyurin/cohomology.hpp"
#include "tyurin/mpoly.hpp"
#include "tyurin/series.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tyurin {

// Sum of q^a * P(theta), normal ordered: monomials on the left, theta
// polynomials on the right. Inside P the symbol for theta_v is the variable
// "th_<v>".
class ThetaOperator {
 public:
  using QMono = std::map<std::string, int>;
  using TermMap = std::map<QMono, MPoly>;

  ThetaOperator() = default;
  ThetaOperator(const BigRational& c);  // NOLINT
  static ThetaOperator theta(const std::string& var);
  static ThetaOperator q(const std::string& var, int k = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // largest |total exponent| of a q-monomial
  int q_degree() const;
  std::vector<std::string> q_variables() const;
  std::vector<std::string> theta_variables() const;

  ThetaOperator operator-() const;
  friend ThetaOperator operator+(const ThetaOperator& a, const ThetaOperator& b);
  friend ThetaOperator operator-(const ThetaOperator& a, const ThetaOperator& b);
  // (q^a P(th)) (q^b R(th)) = q^{a+b} P(th + b) R(th)
  friend ThetaOperator operator*(const ThetaOperator& a, const ThetaOperator& b);
  ThetaOperator pow(int k) const;

  bool operator==(const ThetaOperator& o) const { return terms_ == o.terms_; }
  std::string str() const;

 private:
  void add(const QMono& m, const MPoly& p);
  TermMap terms_;
};

std::string theta_symbol(const std::string& var);

// Text syntax: sums and products of rationals, q-variables, th_<v> (also
// theta_<v>, θ_<v>), bare th/θ/δ for theta of defaultVar, parentheses, ^k.
// Juxtaposition multiplies; '/' only divides by a number.
ThetaOperator parse_operator(const std::string& text, const std::string& defaultVar = "");

struct Applied {
  Series value;
  int validDegree = 0;  // coefficients of total q-degree <= validDegree are exact
};

Applied apply(const ThetaOperator& op, const Series& f);

struct PFSystem {
  std::string name;
  std::vector<ThetaOperator> ops;
  std::vector<std::string> solutionKinds;
};

CheckResult verify_annihilation(const PFSystem& sys, const Series& f, int upTo,
                                const std::string& id = "");

ThetaOperator k3_operator(const std::string& q = "q");
PFSystem k3_system(const std::string& q = "q");
PFSystem tq5_system(const std::string& q1 = "q1", const std::string& q0 = "q0");
PFSystem lg_tx1_system(const std::string& q = "q", const std::string& x = "x");
PFSystem lg_tx2_system(const std::string& q = "q", const std::string& y = "y");

struct CatalogueEntry {
  int N = 0;
  std::string text;
  ThetaOperator op;  // in the variable t
  std::function<BigRational(long)> holomorphic;
  // coefficient of t^n in log solution minus y0 log t
  std::function<BigRational(long)> logCorrection;
};

CatalogueEntry catalogue(int N);  // N in {2,3,4}, else UnknownN
Series catalogue_holomorphic(const CatalogueEntry& e, ContextPtr ctx, const std::string& t = "t");
// ctx needs a log symbol for t
Series catalogue_log_solution(const CatalogueEntry& e, ContextPtr ctx, const std::string& t = "t");

// weight-one elliptic equation t^2 f'' + t f' + ((31/144) t - 1/36)/(t-1)^2 f = 0,
// cleared of denominators
const std::string& kodaira_j_text();
ThetaOperator kodaira_j_operator();

CheckResult verify_k3_ode(int order);
CheckResult verify_tq5_system(int order);
CheckResult verify_lg_systems(int order);
CheckResult verify_catalogue(int N, bool logSolution, int order);
CheckResult verify_operator_identity();
CheckResult verify_kodaira_parse();
// kind: "k3", "tq5", "lg-tx1", "lg-tx2"; pOrder applies to the LG kinds
CheckResult verify_I_annihilation(const std::string& kind, int order, int pOrder = 1);

} // namespace tyurin
