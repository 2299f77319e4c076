#pragma once

#include "tyurin/check.hpp"
#include "tyurin/periods.hpp"

#include <map>
#include <string>

namespace tyurin {

enum class IKind { X, X0, X1, TX2, TXBoth, TX1Both, TX2Both };

std::string to_string(IKind k);

// log symbol name -> cohomology coefficient; the exponent of the prefactor
using LinearForm = std::map<std::string, CohomElement>;

// Cohomology setup for one toric comparison. `source` holds the class
// generators plus the blow-up generator; in the General case `target` drops
// the blow-up generator, which is set to rho_{0,2}.
struct IAlgebra {
  AlgebraPtr source;
  AlgebraPtr target;
  std::string blowup;
};

// orders default to min(cap, number of divisors meeting the class); the
// blow-up generator gets the nilpotency index of rho_{0,2} (General) or 2 (Both)
IAlgebra default_ialgebra(const ToricCI& t, GlueCase c, int cap = 3,
                          const std::map<std::string, int>& overrides = {});

int max_log_degree(const AlgebraPtr& alg);

CohomElement class_element(const AlgebraPtr& alg, const ToricCI& t, const ClassVec& c);

LinearForm prefactor_form(IKind k, const Frame& f, const IAlgebra& a);
LinearForm subst_form(const LinearForm& l, const IAlgebra& a, const ToricCI& t);
Series exp_form(ContextPtr ctx, AlgebraPtr alg, const LinearForm& l);

// I-function with the prefactor stripped (log-free context when logs is false)
Series gen_I_bar(IKind k, const Frame& f, const IAlgebra& a, bool logs = false);
// full I-function, prefactor expanded
Series gen_I(IKind k, const Frame& f, const IAlgebra& a);

// General: sets the blow-up generator to rho_{0,2}; Both: identity
Series to_target(const Series& s, const IAlgebra& a, const ToricCI& t);

CheckResult verify_I_gluing(const Frame& f, const IAlgebra& a);

// closed forms for the quintic and conifold, independent of gen_I
Series I_k3(ContextPtr ctx, AlgebraPtr alg, const std::string& q);
Series I_q5(ContextPtr ctx, AlgebraPtr alg, const std::string& q);
Series I_tq5(ContextPtr ctx, AlgebraPtr alg, const std::string& q1, const std::string& q0);
// pass y empty to use q0 itself as the argument x
Series I_conifold_tx1(ContextPtr ctx, AlgebraPtr alg, const std::string& q1,
                      const std::string& q0, const std::string& y);
Series I_conifold_tx2(ContextPtr ctx, AlgebraPtr alg, const std::string& q1, const std::string& y);
Series I_quintic_x1(ContextPtr ctx, AlgebraPtr alg, int e, const std::string& q1,
                    const std::string& y);
Series I_quintic_tx2(ContextPtr ctx, AlgebraPtr alg, int e, const std::string& q1,
                     const std::string& y);

AlgebraPtr conifold_algebra();  // H^3 = P^2 = 0

CheckResult verify_conifold_I_gluing(int order);
// e = 1 sets P = H, e = 4 sets P = 4H; a nonzero image sets P = image*H instead
CheckResult verify_quintic_I_gluing(int e, int order, int image = 0);
// identity for the coefficient of H^a P^b of the conifold relation, (1,0) or (2,0)
CheckResult coefficient_identity(int a, int b, int order);
// toric generator against the closed forms
CheckResult verify_I_dual_route(int order);

// coefficient of H^a P^b as a scalar series
Series component(const Series& s, const std::vector<int>& monomial);

enum class RelSide { X1, X2 };
// I_0 of the pair at z = 1, coefficient of x_{d0} q1^{d1} q0^{d0} with x_i = 1
Series relative_I0_extract(RelSide which, int order);
CheckResult verify_relative_I0(RelSide which, int order);

} // namespace tyurin
