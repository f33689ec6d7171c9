#pragma once

#include "ballcert/interval.hpp"
#include "ballcert/rational.hpp"
#include "ballcert/verdict.hpp"

#include <optional>
#include <string>

namespace ballcert {

/**
 * Exact element of a real quadratic field: (a + b*sqrt(d)) / c with
 * integers a, b and c > 0, gcd(a, b, c) = 1. The radicand d is reduced
 * (square factors folded into b) and is 0 exactly when b = 0, so rationals
 * are the b = 0 case of the same type.
 *
 * All arithmetic, comparisons and floor computations are exact integer
 * arithmetic; nothing here rounds. Mixing two irrational numbers from
 * different fields in +,-,*,/ is a programming error and throws.
 */
class QuadraticNumber {
public:
    QuadraticNumber() : a_(0), b_(0), c_(1), d_(0) {}
    QuadraticNumber(const BigRational& r);
    QuadraticNumber(long n) : QuadraticNumber(BigRational(n)) {}
    QuadraticNumber(BigInt a, BigInt b, BigInt c, BigInt d);

    static QuadraticNumber sqrt_of(const BigInt& d);

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    const BigInt& d() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    BigRational as_rational() const; // requires is_rational()

    /// Exact sign: -1, 0, +1.
    int sign() const;

    /// Exact comparison within the same field (or against a rational).
    int cmp(const QuadraticNumber& other) const { return (*this - other).sign(); }

    QuadraticNumber operator-() const;
    QuadraticNumber operator+(const QuadraticNumber& o) const;
    QuadraticNumber operator-(const QuadraticNumber& o) const;
    QuadraticNumber operator*(const QuadraticNumber& o) const;
    QuadraticNumber operator/(const QuadraticNumber& o) const;

    bool operator<(const QuadraticNumber& o) const { return cmp(o) < 0; }
    bool operator<=(const QuadraticNumber& o) const { return cmp(o) <= 0; }
    bool operator>(const QuadraticNumber& o) const { return cmp(o) > 0; }
    bool operator>=(const QuadraticNumber& o) const { return cmp(o) >= 0; }
    bool operator==(const QuadraticNumber& o) const { return cmp(o) == 0; }
    bool operator!=(const QuadraticNumber& o) const { return cmp(o) != 0; }

    QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }

    /// Exact floor.
    BigInt floor_() const;

    /// Nearest integer (no ties for irrational values; rational ties round up).
    BigInt nearest_integer() const;

    /// Fractional part, exact: *this - floor().
    QuadraticNumber frac() const;

    /// Outward-rounded enclosure at the given working precision.
    Interval enclosure(mpfr_prec_t prec) const;

    std::string str() const;

private:
    void normalize(bool reduce_radical);
    BigInt a_, b_, c_, d_;
};

/**
 * Exact comparison that also accepts operands from different quadratic
 * fields: decides equality algebraically, then separates by interval
 * refinement (terminates because unequal reals eventually separate).
 */
int compare(const QuadraticNumber& x, const QuadraticNumber& y);

/**
 * Canonical quadratic surd (P + sqrt(D)) / Q:
 *   - Q != 0 and Q | D - P^2 (the invariant the continued-fraction
 *     iteration preserves),
 *   - D >= 0 and not a perfect square,
 *   - the triple is gcd-reduced, and Q > 0 whenever the value's radical
 *     part is positive (inputs with Q < 0 denote the conjugate-signed
 *     value and keep Q < 0).
 */
class QuadraticSurd {
public:
    /// Canonicalize a raw triple. Throws ZeroDenominator or PerfectSquare.
    static QuadraticSurd normalize(const BigInt& p, const BigInt& d, const BigInt& q);

    /// Parse "P,D,Q".
    static QuadraticSurd parse(const std::string& text);

    /// Reconstruct the canonical surd with a prescribed exact value.
    static QuadraticSurd from_value(const QuadraticNumber& v);

    const BigInt& p() const { return p_; }
    const BigInt& d() const { return d_; }
    const BigInt& q() const { return q_; }

    QuadraticNumber value() const { return value_; }
    Interval enclosure(mpfr_prec_t prec) const { return value_.enclosure(prec); }

    int cmp(const QuadraticSurd& o) const { return compare(value_, o.value_); }
    int cmp(const BigRational& r) const { return value_.cmp(QuadraticNumber(r)); }

    std::string str() const;

private:
    QuadraticSurd(BigInt p, BigInt d, BigInt q, QuadraticNumber v)
        : p_(std::move(p)), d_(std::move(d)), q_(std::move(q)), value_(std::move(v)) {}
    BigInt p_, d_, q_;
    QuadraticNumber value_;
};

} // namespace ballcert
