#include "tyurin/rational.hpp"

#include "tyurin/errors.hpp"

namespace tyurin {

BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

BigRational harmonic(long n) {
  BigRational h = 0;
  for (long j = 1; j <= n; ++j) h += BigRational(1, j);
  h.canonicalize();
  return h;
}

std::string to_string(const BigRational& x) { return x.get_str(); }

BigRational parse_rational(const std::string& s) {
  BigRational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw ParseError("not a rational number: '" + s + "'");
  r.canonicalize();
  return r;
}

} // namespace tyurin
