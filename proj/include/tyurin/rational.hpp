#pragma once

#include <gmpxx.h>

#include <string>

namespace tyurin {

using BigInt = mpz_class;
using BigRational = mpq_class;

BigInt factorial(long n);
BigInt binomial(long n, long k);
// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0
BigRational harmonic(long n);

std::string to_string(const BigRational& x);
BigRational parse_rational(const std::string& s);

} // namespace tyurin
