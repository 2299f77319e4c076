#pragma once

#include "tyurin/check.hpp"
#include "tyurin/series.hpp"
#include "tyurin/toric.hpp"

#include <string>
#include <vector>

namespace tyurin {

// General: one blow-up, X1 depends on q and 1/y.
// Both: both sides blown up, an extra class q0 pairs with q0/y.
enum class GlueCase { General, Both };

std::string to_string(GlueCase c);

Window window_bound(const ToricCI& t, GlueCase c, int qOrder, int q0Order);

// Variable and truncation layout shared by every series of one comparison.
struct Frame {
  ToricCI t;
  GlueCase kase = GlueCase::General;
  int qOrder = 4;
  int q0Order = 4;
  std::string q0;  // extra deformation var of the Both case
  std::string y;
  Window window;

  std::vector<std::string> qVars() const;
  TruncationSpec trunc(bool withY, int maxLogDeg = 0) const;
  ContextPtr ctx(bool withY, bool logs = false, int maxLogDeg = 0) const;
};

Frame make_frame(const ToricCI& t, GlueCase c, int qOrder, int q0Order = 4);

// closed-form coefficients
BigRational coeff_X(const ToricCI& t, const DegreeVec& d);
BigRational coeff_X0(const ToricCI& t, const DegreeVec& d);
BigRational coeff_tX2(const ToricCI& t, const DegreeVec& d, int d0);
BigRational coeff_both_tX(const ToricCI& t, const DegreeVec& d, int d0);
BigRational coeff_both_tX1(const ToricCI& t, const DegreeVec& d, int d0);
BigRational coeff_both_tX2(const ToricCI& t, const DegreeVec& d, int d0);

Series f0_X(const Frame& f);
Series f0_X0(const Frame& f);
Series f0_X1(const Frame& f);
Series f0_tX2(const Frame& f);

struct BothFamily {
  Series tX, tX1, tX2;
};
BothFamily f0_both_family(const Frame& f);

// (1/(1-y)) f0^{X0}(lambda) in the General case, (1/((1-y)(1-q0/y))) f0^{X0}(lambda)
// in the Both case, exact on the whole window of f
Series pullback_scaled(const Frame& f);

// residue of f0^{K3}(lambda) dy/(y(1-y)) with lambda = psi/(y(1-y)^4)
Series quintic_iterative_period(int order, const std::string& psi = "psi");

CheckResult verify_period_gluing(const Frame& f);
CheckResult verify_reconstruction(const Frame& f);

// closed-form hypergeometric sums, independent of the toric generators; names select the
// variables of ctx to use
Series k3_period(ContextPtr ctx, const std::string& q);
Series q5_period(ContextPtr ctx, const std::string& q);
Series tq5_period(ContextPtr ctx, const std::string& q1, const std::string& q0);
// x-side of the conifold; pass y empty to use q0 itself as the argument x
Series conifold_tx1_period(ContextPtr ctx, const std::string& q1, const std::string& q0,
                           const std::string& y);
Series conifold_tx2_period(ContextPtr ctx, const std::string& q1, const std::string& y);
// quintic degenerations: e = 1 blows up along P=H, e = 4 along P=4H
Series quintic_x1_period(ContextPtr ctx, int e, const std::string& q1, const std::string& y);
Series quintic_tx2_period(ContextPtr ctx, int e, const std::string& q1, const std::string& y);

// (P^1)^{n+1} example with classes q_1..q_n and q0
enum class FirstBlock { X, X0, X1, X2 };
Series first_block_period(ContextPtr ctx, FirstBlock kind, const std::vector<std::string>& q,
                          const std::string& q0, const std::string& y);

// X2-side period in its own variables (q12, q02, y2) with q1 = q12*y2^e and
// y = q02/y2; e = 0 conifold, 1 and 4 quintic
Series tx2_original(ContextPtr ctx, int e);
Series tx2_to_glued(const Series& original, int e, ContextPtr glued);

// the same gluings written with the closed forms above
CheckResult verify_conifold_period_gluing(int order);
CheckResult verify_quintic_period_gluing(int e, int order);
CheckResult verify_quintic_iterative(int order);
CheckResult verify_first_block(int n, int order);

} // namespace tyurin
