#pragma once

#include "tyurin/cohomology.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tyurin {

struct LogSymbol {
  std::string name;
  std::string var;
  bool operator==(const LogSymbol&) const = default;
};

// Dense slot layout: [deformation vars | laurent vars | log symbols].
class VarTable {
 public:
  VarTable() = default;
  VarTable(std::vector<std::string> deformation, std::vector<std::string> laurent,
           std::vector<LogSymbol> logs = {});
  // one log symbol L_<v> per variable, in variable order
  static VarTable with_logs(std::vector<std::string> deformation,
                            std::vector<std::string> laurent);

  const std::vector<std::string>& deformation() const { return def_; }
  const std::vector<std::string>& laurent() const { return lau_; }
  const std::vector<LogSymbol>& logs() const { return logs_; }
  std::size_t n_def() const { return def_.size(); }
  std::size_t n_laurent() const { return lau_.size(); }
  std::size_t n_log() const { return logs_.size(); }
  std::size_t size() const { return def_.size() + lau_.size() + logs_.size(); }

  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t slot(const std::string& name) const;  // throws VarMismatch
  const std::string& name(std::size_t slot) const;
  bool is_deformation(std::size_t s) const { return s < def_.size(); }
  bool is_laurent(std::size_t s) const { return s >= def_.size() && s < def_.size() + lau_.size(); }
  bool is_log(std::size_t s) const { return s >= def_.size() + lau_.size() && s < size(); }
  std::optional<std::size_t> log_slot_for(std::size_t var_slot) const;
  std::size_t var_slot_of_log(std::size_t log_slot) const;

  // drops a variable together with its log symbol
  VarTable without(const std::string& var) const;

  bool operator==(const VarTable&) const = default;

 private:
  std::vector<std::string> def_, lau_;
  std::vector<LogSymbol> logs_;
};

struct Window {
  int lo = 0;
  int hi = 0;
  bool operator==(const Window&) const = default;
};

struct TruncationSpec {
  int maxTotalDegQ = 0;
  std::map<std::string, int> degCaps;   // optional extra caps on single deformation vars
  std::map<std::string, Window> windows;  // one per laurent var
  int maxLogDeg = 0;
  bool operator==(const TruncationSpec&) const = default;
};

class SeriesContext {
 public:
  SeriesContext(VarTable vars, TruncationSpec trunc);
  const VarTable& vars() const { return vars_; }
  const TruncationSpec& trunc() const { return trunc_; }
  bool admits(const std::vector<int>& e) const;
  int q_degree(const std::vector<int>& e) const;
  int log_degree(const std::vector<int>& e) const;
  bool operator==(const SeriesContext& o) const { return vars_ == o.vars_ && trunc_ == o.trunc_; }

 private:
  VarTable vars_;
  TruncationSpec trunc_;
  std::vector<int> cap_, lo_, hi_;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;
ContextPtr make_context(VarTable vars, TruncationSpec trunc);

class Series {
 public:
  using Exponent = std::vector<int>;
  using TermMap = std::map<Exponent, CohomElement>;

  Series(ContextPtr ctx, AlgebraPtr alg);
  Series(VarTable vars, TruncationSpec trunc, AlgebraPtr alg);

  static Series one(ContextPtr ctx, AlgebraPtr alg);
  static Series monomial(ContextPtr ctx, AlgebraPtr alg, const std::map<std::string, int>& exps,
                         const BigRational& c = 1);

  const ContextPtr& context() const { return ctx_; }
  const VarTable& vars() const { return ctx_->vars(); }
  const TruncationSpec& trunc() const { return ctx_->trunc(); }
  const AlgebraPtr& algebra() const { return alg_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool admits(const Exponent& e) const { return ctx_->admits(e); }
  Exponent exponent(const std::map<std::string, int>& named) const;
  std::map<std::string, int> named(const Exponent& e) const;

  // construction-time accumulation; out-of-truncation terms are dropped
  void accumulate(const Exponent& e, const CohomElement& c);
  void accumulate(const Exponent& e, const BigRational& c);

  CohomElement coefficient(const Exponent& e) const;
  CohomElement coefficient(const std::map<std::string, int>& named) const;
  BigRational scalar(const std::map<std::string, int>& named) const;

  bool operator==(const Series& o) const;
  std::string str() const;

 private:
  ContextPtr ctx_;
  AlgebraPtr alg_;
  TermMap terms_;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series neg(const Series& a);
Series scale(const Series& a, const CohomElement& c);
Series scale(const Series& a, const BigRational& c);
Series mul(const Series& a, const Series& b);
Series hadamard_q(const Series& a, const Series& b, const std::vector<std::string>& which);
Series constant_term_y(const Series& a, const std::string& y);
// sum_{d>=0} C(d+k,k) (c u)^d, stopping once u^d leaves the truncation
Series expand_neg_binomial(ContextPtr ctx, AlgebraPtr alg, const std::map<std::string, int>& u,
                           int k, const BigRational& c = 1);
Series theta(const Series& a, const std::string& var);
Series retruncate(const Series& a, ContextPtr ctx);
Series map_coefficients(const Series& a, AlgebraPtr target,
                        const std::function<CohomElement(const CohomElement&)>& fn);
// exp(A) for A with nilpotent coefficients or positive log degree in every term
Series exp_nilpotent(const Series& a);

struct MonomialImage {
  BigRational coeff = 1;
  std::map<std::string, int> exps;
};

Series substitute(const Series& a, const std::map<std::string, MonomialImage>& images,
                  ContextPtr target, bool strict = false);

// first term in the first differing exponent of smallest q-degree
struct Mismatch {
  std::map<std::string, int> exponent;
  std::string monomial;
  std::string lhs;
  std::string rhs;
};
std::optional<Mismatch> first_difference(const Series& a, const Series& b);

// exponent of a term whose slot `log_var`'s log symbol is nonzero, if any
std::optional<Series::Exponent> first_log_term(const Series& a, const std::string& var);

} // namespace tyurin
