#pragma once

#include "tyurin/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tyurin {

// Commutative algebra Q[g_1..g_n]/(g_i^{k_i}). Monomials are indexed in
// mixed radix: index = sum e_i * stride_i with stride_1 = 1.
class NilpotentAlgebra {
 public:
  struct Generator {
    std::string name;
    int order;
    bool operator==(const Generator&) const = default;
  };

  explicit NilpotentAlgebra(std::vector<Generator> gens);

  static std::shared_ptr<const NilpotentAlgebra> make(std::vector<Generator> gens);
  static std::shared_ptr<const NilpotentAlgebra> trivial();

  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t basis_size() const { return size_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws UnknownGenerator

  std::vector<int> digits(std::uint32_t idx) const;
  std::optional<std::uint32_t> encode(const std::vector<int>& e) const;
  // index of the product monomial, or nullopt when it vanishes
  std::optional<std::uint32_t> mul(std::uint32_t a, std::uint32_t b) const;
  int degree(std::uint32_t idx) const;
  std::string monomial_name(std::uint32_t idx) const;

  bool operator==(const NilpotentAlgebra& o) const { return gens_ == o.gens_; }

 private:
  std::vector<Generator> gens_;
  std::vector<std::uint32_t> stride_;
  std::size_t size_ = 1;
};

using AlgebraPtr = std::shared_ptr<const NilpotentAlgebra>;

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

class CohomElement {
 public:
  using Term = std::pair<std::uint32_t, BigRational>;

  CohomElement() = default;
  explicit CohomElement(AlgebraPtr alg) : alg_(std::move(alg)) {}
  CohomElement(AlgebraPtr alg, const BigRational& c);

  static CohomElement generator(AlgebraPtr alg, const std::string& name);
  static CohomElement monomial(AlgebraPtr alg, const std::vector<int>& e,
                               const BigRational& c = 1);
  // builds from unsorted terms, merging duplicates
  static CohomElement from_terms(AlgebraPtr alg, std::vector<Term> terms);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigRational scalar_part() const;
  bool is_scalar() const;

  BigRational extract(const std::vector<int>& exps) const;
  BigRational extract_index(std::uint32_t idx) const;

  CohomElement operator-() const;
  CohomElement& operator+=(const CohomElement& o);
  CohomElement& operator-=(const CohomElement& o);
  CohomElement& operator*=(const BigRational& c);
  friend CohomElement operator+(CohomElement a, const CohomElement& b) { return a += b; }
  friend CohomElement operator-(CohomElement a, const CohomElement& b) { return a -= b; }
  friend CohomElement operator*(CohomElement a, const BigRational& c) { return a *= c; }
  friend CohomElement operator*(const BigRational& c, CohomElement a) { return a *= c; }
  friend CohomElement operator*(const CohomElement& a, const CohomElement& b);

  // requires an invertible scalar part
  CohomElement inverse() const;
  CohomElement pow(int k) const;

  bool operator==(const CohomElement& o) const;
  std::string str() const;

 private:
  AlgebraPtr alg_;
  std::vector<Term> terms_;
};

CohomElement cmul(const CohomElement& a, const CohomElement& b);

// smallest k with x^k = 0 (0 for x = 0); throws if x has a nonzero scalar part
int nilpotency_index(const CohomElement& x);

// Replaces generator g by a linear combination of the remaining generators.
// The result lives in the algebra with g removed. The map is a ring
// homomorphism only when g's order is at least the nilpotency index of the
// image; orders_for_substitution helps size the source algebra.
CohomElement subst_generator(const CohomElement& a, const std::string& g,
                             const std::vector<std::pair<std::string, BigRational>>& image,
                             AlgebraPtr target = nullptr);

AlgebraPtr remove_generator(const AlgebraPtr& alg, const std::string& g);

CohomElement rising(const CohomElement& c, long n);  // prod_{k=1}^n (c + k)

} // namespace tyurin
