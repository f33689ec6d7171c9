#pragma once

#include "ballcert/continued_fraction.hpp"
#include "ballcert/interval.hpp"
#include "ballcert/quadratic.hpp"
#include "ballcert/verdict.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ballcert {

/**
 * A rotation number gamma together with its derived quantities
 *   R = 1/cos(pi*gamma),  A = (4/3)*pi*tan(pi*gamma)^3.
 *
 * gamma is backed either by an exact value (quadratic surd or rational; the
 * rational backing exists for test and scan utilities only) or by a
 * refinable enclosure (area mode, where gamma = arctan((3A/4pi)^(1/3))/pi
 * is transcendental).
 */
class Rotation {
public:
    static Rotation of_surd(const QuadraticSurd& s);
    static Rotation of_exact(QuadraticNumber gamma);
    /// Area mode. Checks A > 8*omega_3 by escalating intervals and throws
    /// AreaTooSmall when the area is certifiably inadmissible.
    static Rotation of_area(const BigRational& area, const PrecisionPolicy& policy = {});

    bool exact() const { return exact_.has_value(); }
    bool exact_irrational() const { return exact_ && !exact_->is_rational(); }
    const QuadraticNumber& exact_gamma() const;

    Interval gamma(mpfr_prec_t prec) const;
    Interval pi_gamma(mpfr_prec_t prec) const;
    /// R enclosure; throws DomainViolation when the precision cannot keep
    /// cos(pi*gamma) sign-definite (escalate and retry).
    Interval radius(mpfr_prec_t prec) const;
    Interval area(mpfr_prec_t prec) const;

    /// gamma in (arctan(2)/pi, 1/2), the admissible window.
    Verdict in_window(const PrecisionPolicy& policy) const;

private:
    Rotation() = default;
    std::optional<QuadraticNumber> exact_;
    RefinableReal enclosure_;
};

/// Refinable enclosure of gamma_A = arctan((A/omega_3)^(1/3))/pi (no
/// admissibility check; see Rotation::of_area).
RefinableReal gamma_enclosure_from_area(const BigRational& area);

/// Enclosure of the admissibility threshold 8*omega_3 = 32*pi/3.
Interval area_lower_bound(mpfr_prec_t prec);

/**
 * delta_k data for an exact gamma: the nearest integer m to (2k-1)*gamma and
 * the exact distance |(2k-1)*gamma - m| in (0, 1/2). The angle delta_k
 * itself is pi * dist, available as an enclosure at any precision.
 */
struct DeltaValue {
    long k = 0;
    BigInt nearest;
    QuadraticNumber dist;
    Interval delta(mpfr_prec_t prec) const { return Interval::pi(prec) * dist.enclosure(prec); }
};

/// Exact delta_k (throws DomainViolation on dist = 0, possible only for
/// rational gamma).
DeltaValue delta_of(const QuadraticNumber& gamma, long k);

/// The two smallest of delta_1..delta_k, selected by exact comparison.
struct MinPair {
    long k = 0;
    DeltaValue alpha, beta; // alpha.dist < beta.dist strictly
};
MinPair min_pair(const QuadraticNumber& gamma, long k);

/// u_k = R e^{i pi (1-2k) gamma} as coordinate enclosures (exact gamma only;
/// the angle is reduced mod 2 exactly before evaluation).
std::pair<Interval, Interval> rotation_point(const Rotation& rot, long k, mpfr_prec_t prec);

/// G(x) = arctan(sqrt(x^2-1)) - pi*gamma. Throws DomainViolation unless the
/// enclosure of x is certainly > 1.
Interval G_of(const Rotation& rot, const Interval& x, mpfr_prec_t prec);

/**
 * Interval evaluations of the bound functions. Arguments are angle
 * enclosures in (0, pi/2); F_plus requires alpha certainly below beta
 * (callers may pass either order, it is normalized here). Returns nullopt
 * when the enclosures are too coarse to stay inside the domain (escalate).
 */
std::optional<Interval> F_plus_eval(const Interval& radius, Interval alpha, Interval beta,
                                    const Interval& pi_gamma);
std::optional<Interval> F_minus_eval(const Interval& radius, const Interval& alpha,
                                     const Interval& pi_gamma);

/**
 * Incremental generator of the exact (or enclosure-backed) distance sequence
 * dist_k = dist((2k-1)*gamma, Z) with running two smallest values. Sequential
 * in k; one engine per gamma.
 */
class DeltaEngine {
public:
    DeltaEngine(const Rotation& rot, const PrecisionPolicy& policy);
    ~DeltaEngine();
    DeltaEngine(const DeltaEngine&) = delete;
    DeltaEngine& operator=(const DeltaEngine&) = delete;

    /// Greatest k for which delta_k has been generated.
    long generated() const;
    /// Generate up to k; returns false if a degeneracy (zero distance or an
    /// exact tie at the minimum; rational gamma only) or precision exhaustion
    /// stopped the sequence first.
    bool extend(long k);

    struct Stop {
        bool stopped = false;
        long at_k = 0;
        std::string reason;
    };
    const Stop& stop() const;

    long alpha_index(long k) const; ///< argmin of dist over 1..k (k >= 2 generated)
    long beta_index(long k) const;

    Interval dist_interval(long k, mpfr_prec_t prec) const;
    Interval delta_interval(long k, mpfr_prec_t prec) const;

    /// Exact mode only.
    const QuadraticNumber& exact_dist(long k) const;
    bool exact() const;

    /// dist_alpha(k) < gamma, i.e. alpha_k < pi*gamma (F_minus domain).
    Verdict alpha_below_pi_gamma(long k) const;

    const Rotation& rotation() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct CheckCResult {
    Verdict verdict = Verdict::unknown;
    double margin = 0.0;        ///< min over both inequalities of rhs.lo - lhs.hi
    mpfr_prec_t precision = 0;  ///< precision of the deciding evaluation
    bool domain_edge = false;   ///< F domain could not be certified (flag, never guess)
    std::string note;
    std::string fplus_lo, fplus_hi, fminus_lo, fminus_hi, delta_lo, delta_hi;
};

/**
 * Condition C(A,k) for k >= 2: both strict inequalities
 *   F_plus(alpha_k, beta_k) < delta_{k+1},  F_minus(alpha_k) < delta_{k+1}
 * decided by separated enclosures under the adaptive precision ladder.
 */
CheckCResult check_C(DeltaEngine& engine, long k, const PrecisionPolicy& policy);

} // namespace ballcert
