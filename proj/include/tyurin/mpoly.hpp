#pragma once

#include "tyurin/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tyurin {

// Variable names are interned process-wide; ids are stable for the process.
using VarId = int;
VarId intern(const std::string& name);
const std::string& var_name(VarId id);

// Laurent monomial, sparse and sorted by id, no zero exponents.
struct Mono {
  std::vector<std::pair<VarId, int>> e;

  static Mono var(VarId v, int k = 1);
  int exp(VarId v) const;
  Mono operator*(const Mono& o) const;
  Mono inverse() const;
  bool is_one() const { return e.empty(); }
  bool operator==(const Mono&) const = default;
  std::string str() const;
};

// lexicographic on dense exponent vectors ordered by id; compatible with products
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

class MPoly {
 public:
  using TermMap = std::map<Mono, BigRational, MonoLess>;

  MPoly() = default;
  MPoly(const BigRational& c);  // NOLINT: constants convert implicitly
  static MPoly var(const std::string& name, int k = 1);
  static MPoly monomial(const Mono& m, const BigRational& c = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // largest term in MonoLess order
  std::pair<Mono, BigRational> leading() const;
  std::vector<VarId> vars() const;
  int min_exp(VarId v) const;
  int max_exp(VarId v) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly pow(int k) const;  // k >= 0, or any k for a monomial

  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
  std::string str() const;

 private:
  void add_term(const Mono& m, const BigRational& c);
  TermMap terms_;
};

// num/den with den != 0; never reduced, equality by cross-multiplication
class RationalFunc {
 public:
  RationalFunc() : num_(BigRational(0)), den_(BigRational(1)) {}
  RationalFunc(const MPoly& p) : num_(p), den_(BigRational(1)) {}  // NOLINT
  RationalFunc(const BigRational& c) : num_(c), den_(BigRational(1)) {}  // NOLINT
  RationalFunc(const MPoly& num, const MPoly& den);  // throws DegenerateParameters
  static RationalFunc var(const std::string& name) { return MPoly::var(name); }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunc operator-() const { return RationalFunc(-num_, den_); }
  friend RationalFunc operator+(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator-(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator/(const RationalFunc& a, const RationalFunc& b);
  RationalFunc pow(int k) const;

  bool operator==(const RationalFunc& o) const;
  std::string str() const;

 private:
  MPoly num_, den_;
};

// simultaneous substitution var -> image
using Identification = std::vector<std::pair<std::string, RationalFunc>>;

RationalFunc substitute(const RationalFunc& f, const Identification& ident);
RationalFunc substitute(const MPoly& p, const Identification& ident);

// c * m with f = c * m * g, when f/g is a single nonzero term
std::optional<std::pair<Mono, BigRational>> monomial_ratio(const RationalFunc& f,
                                                           const RationalFunc& g);

std::string monomial_str(const Mono& m, const BigRational& c);

} // namespace tyurin
