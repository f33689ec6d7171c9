#pragma once

#include "ballcert/quadratic.hpp"
#include "ballcert/verdict.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ballcert {

/// What is known about the coefficients beyond the explicitly stored ones.
struct TailDescriptor {
    enum class Kind {
        periodic,          ///< digits repeat: preperiod + period reproduce the value exactly
        bounded,           ///< all coefficients bounded by `bound`
        polynomial_square, ///< a_j <= j^2 for j >= poly_from
        unknown,           ///< nothing known beyond the stored digits
    };

    Kind kind = Kind::unknown;
    size_t preperiod_len = 0;          // periodic
    std::vector<BigInt> period;        // periodic, non-empty
    BigInt bound;                      // bounded, >= 1
    size_t poly_from = 4;              // polynomial_square
    size_t depth = 0;                  // unknown: digits reliable up to this count

    static TailDescriptor periodic(size_t preperiod_len, std::vector<BigInt> period);
    static TailDescriptor bounded(BigInt bound);
    static TailDescriptor polynomial_square(size_t from);
    static TailDescriptor unknown_tail(size_t depth);

    std::string str() const;
};

/**
 * Continued fraction [a_0; a_1, a_2, ...] with a tail descriptor. For a
 * periodic tail any digit index is addressable; otherwise only the stored
 * digits are.
 */
struct ContinuedFraction {
    std::vector<BigInt> digits; ///< for periodic tails: exactly preperiod + period
    TailDescriptor tail;

    bool digit_available(size_t j) const;
    BigInt digit(size_t j) const; ///< throws DomainViolation past the known range

    /// Number of explicitly known digits (periodic tails: unbounded, returns SIZE_MAX).
    size_t known_digits() const;
};

/**
 * Exact eventually-periodic expansion of a quadratic surd via the integer
 * iteration P' = aQ - P, Q' = (D - P'^2)/Q on the canonical triple. The
 * state space is finite, so the period is detected by exact state
 * repetition; preperiod + period reproduce the input exactly.
 */
ContinuedFraction expand_surd(const QuadraticSurd& s);

/// Exact value of a periodic continued fraction (test oracle for expand_surd).
QuadraticNumber periodic_value(const std::vector<BigInt>& preperiod,
                               const std::vector<BigInt>& period);

/// A procedure producing an enclosure of a fixed real at any requested precision.
using RefinableReal = std::function<Interval(mpfr_prec_t)>;

struct StreamExpansion {
    std::vector<BigInt> digits;
    bool rational_terminated = false; ///< enclosure collapsed onto an exact rational
    bool precision_exhausted = false; ///< the ladder cap was reached before max_digits
    mpfr_prec_t precision_used = 0;
};

/**
 * Expand a refinable enclosure digit by digit. Each digit is emitted only
 * while the current enclosure determines its floor unambiguously; otherwise
 * the whole prefix is recomputed at the next rung of the ladder.
 */
StreamExpansion expand_stream(const RefinableReal& x, size_t max_digits,
                              const PrecisionPolicy& policy);

struct ConvergentRow {
    size_t j = 0;
    BigInt p, q;
    std::optional<BigInt> q_tilde; ///< (q+1)/2, present iff q is odd
};

/**
 * Table of convergents p_j/q_j for j = 0..n, built from the recursions
 * q_j = a_j q_{j-1} + q_{j-2} (q_{-1} = 0, q_0 = 1) and the p analog
 * (p_{-1} = 1, p_0 = a_0).
 */
class ConvergentTable {
public:
    ConvergentTable() = default;
    const ConvergentRow& row(size_t j) const; ///< throws if j > max index
    size_t max_index() const { return rows_.empty() ? 0 : rows_.size() - 1; }
    const std::vector<ConvergentRow>& rows() const { return rows_; }

    const BigInt& q(size_t j) const { return row(j).q; }
    const BigInt& p(size_t j) const { return row(j).p; }
    /// q~_j = (q_j+1)/2; throws DomainViolation if q_j is even.
    BigInt q_tilde(size_t j) const;

    friend ConvergentTable convergents(const ContinuedFraction& cf, size_t n);

private:
    std::vector<ConvergentRow> rows_;
};

ConvergentTable convergents(const ContinuedFraction& cf, size_t n);

struct ParityReport {
    Verdict verdict = Verdict::unknown;
    std::string detail;                ///< first violated clause, if any
    size_t checked_digits = 0;
};

/**
 * Checks the digit pattern a_0 = 0, a_1 = 2, a_3 odd, a_j even for all
 * j >= 4 (which makes every q_j odd for j >= 2). Periodic tails are decided
 * exactly; open tails can only refute or return unknown.
 */
ParityReport parity_check(const ContinuedFraction& cf);

struct DiophantineReport {
    bool two_sided_ok = true;    ///< 1/(q_k (a_{k+1}+2)) < |q_k g - p_k| < 1/q_{k+1}
    bool best_approx_ok = true;  ///< |q g - p| >= |q_k g - p_k| for q <= q_k
    bool growth_ok = true;       ///< q_j >= 2^{(j-1)/2}
    std::string detail;
    bool all_ok() const { return two_sided_ok && best_approx_ok && growth_ok; }
};

/**
 * Exact verification of the classical convergent inequalities for an exact
 * gamma (test utility: these are theorems, so a failure flags a bug).
 * `max_j` limits the indices checked; `best_approx_max_j` limits the
 * brute-force best-approximation scan (quadratic cost in q_j).
 */
DiophantineReport diophantine_bounds_check(const ContinuedFraction& cf,
                                           const ConvergentTable& table,
                                           const QuadraticSurd& gamma, size_t max_j,
                                           size_t best_approx_max_j = 6);

} // namespace ballcert
