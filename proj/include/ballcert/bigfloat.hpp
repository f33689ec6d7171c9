#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace ballcert {

/**
 * Value-semantic wrapper around an mpfr_t.
 *
 * A BigFloat owns one MPFR number at a fixed precision. All arithmetic on
 * BigFloats in this library goes through explicit rounding modes; there is
 * deliberately no operator+ here, because every operation on certified
 * quantities must state its rounding direction (see interval.hpp).
 */
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_nan(v_);
    }

    BigFloat(const BigFloat& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN); // same precision: exact
    }

    BigFloat(BigFloat&& other) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, other.v_);
    }

    BigFloat& operator=(const BigFloat& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& other) noexcept {
        if (this != &other) mpfr_swap(v_, other.v_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat of_long(long x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, x, rnd);
        return r;
    }

    static BigFloat of_integer(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), rnd);
        return r;
    }

    static BigFloat of_rational(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, x.get_mpq_t(), rnd);
        return r;
    }

    static BigFloat of_double(double x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, x, rnd);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Exact three-way comparison (precision-independent).
    int cmp(const BigFloat& other) const { return mpfr_cmp(v_, other.v_); }

    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
    bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
    bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }
    bool operator==(const BigFloat& o) const { return cmp(o) == 0; }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

    /// Exact floor as an integer (no precision loss).
    mpz_class floor_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }

    mpz_class ceil_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
        return z;
    }

    /**
     * Decimal rendering with a directed rounding mode, suitable for
     * serializing interval endpoints without losing the enclosure property.
     */
    std::string decimal(size_t digits, mpfr_rnd_t rnd) const;

private:
    mpfr_t v_;
};

} // namespace ballcert
