#pragma once

#include "ballcert/bigfloat.hpp"
#include "ballcert/errors.hpp"
#include "ballcert/verdict.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace ballcert {

/**
 * Closed interval [lo, hi] of arbitrary-precision floats with outward
 * rounding on every operation: the result of op(X, Y) always encloses
 * { op(x, y) : x in X, y in Y }.
 *
 * Both endpoints carry the same working precision. Refining the precision
 * of the leaves of an expression and re-evaluating never moves the enclosure
 * outside the coarser one (each endpoint is computed with directed rounding,
 * never by epsilon-inflation).
 */
class Interval {
public:
    /// Uninitialized intervals are not representable; construct from endpoints.
    Interval(BigFloat lo, BigFloat hi);

    static Interval point_long(long x, mpfr_prec_t prec);
    static Interval of_integer(const mpz_class& x, mpfr_prec_t prec);
    static Interval of_rational(const mpq_class& x, mpfr_prec_t prec);
    static Interval of_double(double x, mpfr_prec_t prec);

    /// Enclosure of pi at the given precision (cached, initialize-once).
    static Interval pi(mpfr_prec_t prec);

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    mpfr_prec_t precision() const { return lo_.precision(); }

    /// Upper bound on the diameter (rounded up).
    BigFloat width() const;
    double width_double() const { return width().to_double(MPFR_RNDU); }

    double mid_double() const;

    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool is_positive() const { return lo_.sign() > 0; }
    bool is_negative() const { return hi_.sign() < 0; }
    bool contains(const mpq_class& x) const;

    /// Widen symmetrically so the radius grows by `r` on both sides (sound:
    /// a superset of an enclosure is an enclosure).
    Interval widened(double r) const;

    std::string lo_decimal(size_t digits) const { return lo_.decimal(digits, MPFR_RNDD); }
    std::string hi_decimal(size_t digits) const { return hi_.decimal(digits, MPFR_RNDU); }

    Interval operator-() const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Requires the divisor to be sign-definite (throws DomainViolation).
    friend Interval operator/(const Interval& a, const Interval& b);

private:
    BigFloat lo_, hi_;
};

Interval abs(const Interval& x);

/// Requires x.lo >= 0.
Interval sqrt(const Interval& x);
Interval cbrt(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
/// Throws PoleInEnclosure if [lo,hi] may straddle an odd multiple of pi/2.
Interval tan(const Interval& x);
Interval atan(const Interval& x);
Interval sqr(const Interval& x);

/**
 * Tri-valued strict comparison of enclosures.
 *   certified_true   every a in A is < every b in B
 *   certified_false  every a in A is >= every b in B
 *   unknown          the enclosures overlap
 */
Verdict certify_less(const Interval& a, const Interval& b);

/// Signed separation rhs.lo - lhs.hi (positive when `lhs < rhs` is certified),
/// as a double for reporting.
double separation_margin(const Interval& lhs, const Interval& rhs);

} // namespace ballcert
