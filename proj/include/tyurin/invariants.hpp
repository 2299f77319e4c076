#pragma once

#include "tyurin/check.hpp"
#include "tyurin/mpoly.hpp"
#include "tyurin/periods.hpp"

#include <string>
#include <vector>

namespace tyurin {

// lambda_i on the glued family and lambda_{i,1}, lambda_{i,2} on the two
// sides, together with the identification of the side parameters.
struct InvariantSet {
  GlueCase kase = GlueCase::General;
  std::vector<std::string> q;   // q_i
  std::vector<std::string> q1;  // q_{i,1}
  std::vector<std::string> q2;  // q_{i,2}
  std::string y, y1, y2, q0, q01, q02;
  std::vector<RationalFunc> lambda, lambda1, lambda2;
  Identification ident;
};

InvariantSet build_invariants(const ToricCI& t, GlueCase c);

// lambda_i/q_i = (lambda_{i,1}/q_i)(lambda_{i,2}/q_i) after the identification.
// perturb raises one exponent of lambda_{0,2} (negative control).
CheckResult check_product_relation(const ToricCI& t, GlueCase c, bool perturb = false);

// gluing of two cyclic-cover invariants along partitions a = [a_1..a_n],
// b = [b_1..b_m]; the last parts a_n, b_m play the distinguished role
enum class HurwitzVersion {
  Updated,          // parameters q1^(i), q2^(j)
  Original,         // parameters alpha_i, beta_j with the sign prod(-alpha_i)^{a_i}
  OriginalLiteral,  // the same with prod alpha_i^{a_i}; wrong sign for odd a_1 + ... + a_{n-1}
};

struct HurwitzGlue {
  RationalFunc glued;       // Q * product, in y
  RationalFunc transformed; // glued after y = (1-q) yt + q
  RationalFunc normalForm;  // z-form with z1, z2 expressed in the parameters
  RationalFunc zForm;       // z-form with z1, z2 free
  RationalFunc limit;       // zForm at z1 = 0
  RationalFunc limitExpected;
};

HurwitzGlue hurwitz_glue(const std::vector<int>& a, const std::vector<int>& b,
                         HurwitzVersion v = HurwitzVersion::Updated);
CheckResult verify_hurwitz(const std::vector<int>& a, const std::vector<int>& b,
                           HurwitzVersion v = HurwitzVersion::Updated);
// every pair of compositions with |a| + |b| <= maxTotal
CheckResult verify_hurwitz_all(int maxTotal = 6, HurwitzVersion v = HurwitzVersion::Updated);

// a = [1], b = [4] gives (z1 yt + z2)/(yt (yt-1)^4), the quintic form at z1 = 0,
// and agrees with the conifold invariant under y -> q0/y
CheckResult verify_quintic_limit();
// yq1/((y-1)(y-q0)^4) rewritten in yt with z1 = q1/(1-q0)^4, z2 = z1 q0/(1-q0)
CheckResult verify_conifold_rewrite();

enum class LGSide { X1, X2 };

struct LGNormalForm {
  std::vector<RationalFunc> transformed;
  std::vector<RationalFunc> target;
  std::vector<std::string> factors;  // transformed = factor * target
};

LGNormalForm lg_normal_form(LGSide which, int n);
CheckResult verify_lg_normal_form(LGSide which, int n);

} // namespace tyurin
