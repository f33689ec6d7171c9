#pragma once

#include <gmpxx.h>

#include <string>

namespace ballcert {

// Arbitrary-precision integers and rationals are provided by GMP; mpq_class
// is kept canonical (lowest terms, positive denominator) at construction.
using BigInt = mpz_class;
using BigRational = mpq_class;

/// Parse a decimal literal ("81.5849", "-0.25", "3", "1.2e3") into an exact
/// rational. Throws InputError on malformed input. No binary float round-trip.
BigRational parse_decimal(const std::string& text);

/// Floor of a/b for b > 0 (GMP fdiv).
BigInt floor_div(const BigInt& a, const BigInt& b);

/// Floor of a rational.
BigInt floor_rational(const BigRational& x);

/// Nearest integer to a rational; ties round toward +infinity (callers that
/// care about ties must exclude them beforehand).
BigInt nearest_integer(const BigRational& x);

bool is_perfect_square(const BigInt& n);

/// Integer square root (floor).
BigInt isqrt(const BigInt& n);

/// Write n = s^2 * r with r free of square factors up to the trial-division
/// bound (full squarefree decomposition for n with no square prime factor
/// above ~10^6). Returns {s, r}.
std::pair<BigInt, BigInt> extract_square_part(const BigInt& n);

} // namespace ballcert
