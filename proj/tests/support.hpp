#pragma once

#include "tyurin/series.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace tyurin::testing {

inline ContextPtr ctx_q(std::vector<std::string> def, int order, std::vector<std::string> lau = {},
                        Window w = {}, bool logs = false, int logDeg = 0) {
  TruncationSpec tr;
  tr.maxTotalDegQ = order;
  for (const auto& y : lau) tr.windows[y] = w;
  tr.maxLogDeg = logs ? logDeg : 0;
  VarTable vt = logs ? VarTable::with_logs(def, lau) : VarTable(def, lau);
  return make_context(std::move(vt), tr);
}

inline Series mono(ContextPtr ctx, std::map<std::string, int> e, BigRational c = 1,
                   AlgebraPtr alg = nullptr) {
  return Series::monomial(std::move(ctx), std::move(alg), e, c);
}

// small random series: integer coefficients in [-3,3], laurent exponents in
// [-span, span] so that products stay inside the window
inline Series random_series(std::mt19937_64& rng, ContextPtr ctx, int terms,
                            AlgebraPtr alg = nullptr, int span = 1) {
  Series s(ctx, alg);
  const auto& vt = ctx->vars();
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int k = 0; k < terms; ++k) {
    Series::Exponent e(vt.size(), 0);
    for (std::size_t i = 0; i < vt.size(); ++i) {
      if (vt.is_deformation(i)) {
        e[i] = std::uniform_int_distribution<int>(0, 2)(rng);
      } else if (vt.is_laurent(i)) {
        auto w = ctx->trunc().windows.at(vt.name(i));
        e[i] = std::uniform_int_distribution<int>(std::max(w.lo, -span), std::min(w.hi, span))(rng);
      } else {
        e[i] = std::uniform_int_distribution<int>(0, 1)(rng);
      }
    }
    if (!alg) {
      s.accumulate(e, BigRational(coef(rng)));
      continue;
    }
    std::vector<CohomElement::Term> ts;
    for (std::uint32_t idx = 0; idx < alg->basis_size(); ++idx) ts.emplace_back(idx, BigRational(coef(rng)));
    s.accumulate(e, CohomElement::from_terms(alg, ts));
  }
  return s;
}

} // namespace tyurin::testing
