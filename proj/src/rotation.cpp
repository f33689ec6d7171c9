#include "ballcert/rotation.hpp"

#include "ballcert/errors.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace ballcert {

Rotation Rotation::of_surd(const QuadraticSurd& s) {
    Rotation r;
    r.exact_ = s.value();
    return r;
}

Rotation Rotation::of_exact(QuadraticNumber gamma) {
    Rotation r;
    r.exact_ = std::move(gamma);
    return r;
}

RefinableReal gamma_enclosure_from_area(const BigRational& area) {
    return [area](mpfr_prec_t prec) {
        mpfr_prec_t p = prec + 16;
        Interval a = Interval::of_rational(area, p);
        Interval pi = Interval::pi(p);
        Interval ratio = a * Interval::point_long(3, p) / (Interval::point_long(4, p) * pi);
        Interval g = atan(cbrt(ratio)) / pi;
        return g;
    };
}

Interval area_lower_bound(mpfr_prec_t prec) {
    return Interval::pi(prec) * Interval::point_long(32, prec) / Interval::point_long(3, prec);
}

Rotation Rotation::of_area(const BigRational& area, const PrecisionPolicy& policy) {
    Verdict admissible = run_ladder(policy, [&](mpfr_prec_t p) {
        Interval bound = area_lower_bound(p);
        Interval a = Interval::of_rational(area, p);
        return certify_less(bound, a);
    });
    if (admissible == Verdict::certified_false) {
        std::ostringstream os;
        os << "area " << area << " is not above 8*omega_3 ~ 33.51";
        throw AreaTooSmall(os.str());
    }
    if (admissible == Verdict::unknown)
        throw PrecisionExhausted("could not separate area from 8*omega_3");
    Rotation r;
    r.enclosure_ = gamma_enclosure_from_area(area);
    return r;
}

const QuadraticNumber& Rotation::exact_gamma() const {
    if (!exact_) throw DomainViolation("rotation number is enclosure-backed");
    return *exact_;
}

Interval Rotation::gamma(mpfr_prec_t prec) const {
    if (exact_) return exact_->enclosure(prec);
    return enclosure_(prec);
}

Interval Rotation::pi_gamma(mpfr_prec_t prec) const {
    return Interval::pi(prec) * gamma(prec);
}

namespace {

// the closed forms R = 1/cos(pi g), A = (4/3) pi tan(pi g)^3 carry the
// contract gamma in (1/3, 1/2), exclusive
void require_formula_domain(const std::optional<QuadraticNumber>& exact) {
    if (!exact) return;
    if (!(*exact > QuadraticNumber(BigRational(1, 3)) &&
          *exact < QuadraticNumber(BigRational(1, 2))))
        throw DomainViolation("gamma outside (1/3, 1/2)");
}

} // namespace

Interval Rotation::radius(mpfr_prec_t prec) const {
    require_formula_domain(exact_);
    Interval c = cos(pi_gamma(prec + 8));
    if (!c.is_positive())
        throw DomainViolation("cos(pi*gamma) not certifiably positive at this precision");
    return Interval::point_long(1, prec) / c;
}

Interval Rotation::area(mpfr_prec_t prec) const {
    require_formula_domain(exact_);
    mpfr_prec_t p = prec + 8;
    Interval t = tan(pi_gamma(p)); // throws PoleInEnclosure if too coarse
    Interval t3 = t * t * t;
    return Interval::point_long(4, p) * Interval::pi(p) * t3 / Interval::point_long(3, p);
}

Verdict Rotation::in_window(const PrecisionPolicy& policy) const {
    // upper end: gamma < 1/2
    Verdict upper;
    if (exact_) {
        int c = exact_->cmp(QuadraticNumber(BigRational(1, 2)));
        upper = c < 0 ? Verdict::certified_true : Verdict::certified_false;
    } else {
        upper = run_ladder(policy, [&](mpfr_prec_t p) {
            return certify_less(gamma(p), Interval::of_rational(BigRational(1, 2), p));
        });
    }
    if (upper != Verdict::certified_true) return upper;

    // lower end: arctan(2)/pi < gamma
    return run_ladder(policy, [&](mpfr_prec_t p) {
        Interval bound = atan(Interval::point_long(2, p)) / Interval::pi(p);
        return certify_less(bound, gamma(p));
    });
}

DeltaValue delta_of(const QuadraticNumber& gamma, long k) {
    if (k < 1) throw DomainViolation("delta index must be >= 1");
    QuadraticNumber x = QuadraticNumber(BigRational(2 * k - 1)) * gamma;
    BigInt m = x.nearest_integer();
    QuadraticNumber dist = (x - QuadraticNumber(BigRational(m))).abs();
    if (dist.is_zero()) throw DomainViolation("(2k-1)*gamma is an integer: distance is zero");
    DeltaValue d;
    d.k = k;
    d.nearest = m;
    d.dist = dist;
    return d;
}

MinPair min_pair(const QuadraticNumber& gamma, long k) {
    if (k < 2) throw DomainViolation("min_pair needs k >= 2");
    MinPair mp;
    mp.k = k;
    mp.alpha = delta_of(gamma, 1);
    bool have_beta = false;
    for (long i = 2; i <= k; ++i) {
        DeltaValue d = delta_of(gamma, i);
        int ca = d.dist.cmp(mp.alpha.dist);
        if (ca == 0) continue; // duplicate values collapse
        if (ca < 0) {
            mp.beta = mp.alpha;
            have_beta = true;
            mp.alpha = d;
        } else if (!have_beta || d.dist < mp.beta.dist) {
            mp.beta = d;
            have_beta = true;
        }
    }
    if (!have_beta)
        throw DomainViolation("second smallest distance undefined (all values equal)");
    return mp;
}

std::pair<Interval, Interval> rotation_point(const Rotation& rot, long k, mpfr_prec_t prec) {
    if (k < 1) throw DomainViolation("rotation point index must be >= 1");
    if (!rot.exact()) throw DomainViolation("rotation_point needs an exact gamma");
    // angle = pi * ((1-2k)*gamma mod 2), reduced exactly
    QuadraticNumber t = QuadraticNumber(BigRational(1 - 2 * k)) * rot.exact_gamma();
    QuadraticNumber two(BigRational(2));
    QuadraticNumber r = t - two * QuadraticNumber(BigRational((t / two).floor_())); // in [0, 2)
    mpfr_prec_t p = prec + 8;
    Interval angle = Interval::pi(p) * r.enclosure(p);
    Interval radius = rot.radius(p);
    return { radius * cos(angle), radius * sin(angle) };
}

Interval G_of(const Rotation& rot, const Interval& x, mpfr_prec_t prec) {
    if (x.lo().cmp(BigFloat::of_long(1, 16, MPFR_RNDN)) <= 0)
        throw DomainViolation("G: argument enclosure must be > 1");
    mpfr_prec_t p = std::max(prec, x.precision());
    Interval one = Interval::point_long(1, p);
    return atan(sqrt(x * x - one)) - rot.pi_gamma(p);
}

namespace {

// atan(sqrt(x^2 - 1)), nullopt unless x is certainly > 1
std::optional<Interval> angle_from_secant(const Interval& x) {
    mpfr_prec_t p = x.precision();
    Interval one = Interval::point_long(1, p);
    if (x.lo().cmp(one.hi()) <= 0) return std::nullopt;
    return atan(sqrt(x * x - one));
}

} // namespace

std::optional<Interval> F_plus_eval(const Interval& radius, Interval alpha, Interval beta,
                                    const Interval& pi_gamma) {
    if (alpha.lo().cmp(beta.lo()) > 0) std::swap(alpha, beta); // F_plus is symmetric
    if (alpha.hi().cmp(beta.lo()) >= 0) return std::nullopt;   // need strict separation
    if (alpha.lo().sign() <= 0) return std::nullopt;
    // chord through angles alpha < beta crosses the axis at
    // R * sin(beta-alpha) / (sin(beta) - sin(alpha)) >= R
    Interval num = sin(beta - alpha);
    Interval den = sin(beta) - sin(alpha);
    if (!num.is_positive() || !den.is_positive()) return std::nullopt;
    Interval arg = radius * num / den;
    auto ang = angle_from_secant(arg);
    if (!ang) return std::nullopt;
    return *ang - pi_gamma;
}

std::optional<Interval> F_minus_eval(const Interval& radius, const Interval& alpha,
                                     const Interval& pi_gamma) {
    if (alpha.lo().sign() <= 0) return std::nullopt;
    Interval arg = radius * cos(alpha);
    auto ang = angle_from_secant(arg);
    if (!ang) return std::nullopt;
    return pi_gamma - *ang;
}

// ---------------------------------------------------------------------------
// DeltaEngine

struct DeltaEngine::Impl {
    const Rotation& rot;
    PrecisionPolicy policy;
    bool exact_mode;

    // exact mode: fractional parts and distances as field elements
    QuadraticNumber gamma_exact;
    QuadraticNumber y;               // frac((2k-1)*gamma) of the last row
    std::vector<QuadraticNumber> dists;

    // enclosure mode: locked nearest integers; dists recomputed per precision
    std::vector<BigInt> nearest;

    std::vector<long> alpha_idx, beta_idx; // per k (1-based; beta from k >= 2)
    Stop stop;

    explicit Impl(const Rotation& r, const PrecisionPolicy& pol)
        : rot(r), policy(pol), exact_mode(r.exact()) {
        if (exact_mode) gamma_exact = r.exact_gamma();
    }

    long generated() const { return static_cast<long>(alpha_idx.size()); }

    Interval dist_enclosure(long k, mpfr_prec_t prec) const {
        if (exact_mode) return dists[static_cast<size_t>(k - 1)].enclosure(prec);
        // (2k-1)*gamma - m, with enough working bits to absorb the factor
        mpfr_prec_t p = prec + 8 + static_cast<mpfr_prec_t>(mpz_sizeinbase(BigInt(2 * k).get_mpz_t(), 2));
        Interval x = Interval::point_long(2 * k - 1, p) * rot.gamma(p);
        Interval d = x - Interval::of_integer(nearest[static_cast<size_t>(k - 1)], p);
        return abs(d);
    }

    // exact three-way comparison (exact mode only)
    int dist_cmp(long i, long j) const {
        return dists[static_cast<size_t>(i - 1)].cmp(dists[static_cast<size_t>(j - 1)]);
    }

    // tri-valued strict comparison for the enclosure mode
    Verdict dist_less(long i, long j) const {
        return run_ladder(policy, [&](mpfr_prec_t p) {
            return certify_less(dist_enclosure(i, p), dist_enclosure(j, p));
        });
    }

    bool push_exact(long k) {
        QuadraticNumber two_gamma = QuadraticNumber(BigRational(2)) * gamma_exact;
        if (k == 1)
            y = gamma_exact.frac();
        else
            y = (y + two_gamma).frac();
        if (y.is_zero()) {
            stop = { true, k, "distance is zero: (2k-1)*gamma integral" };
            return false;
        }
        QuadraticNumber half(BigRational(1, 2));
        int cmp_half = y.cmp(half);
        if (cmp_half == 0) {
            stop = { true, k, "distance equals 1/2 exactly" };
            return false;
        }
        QuadraticNumber dist = cmp_half < 0 ? y : QuadraticNumber(BigRational(1)) - y;
        dists.push_back(std::move(dist));
        return true;
    }

    bool push_enclosure(long k) {
        // lock the nearest integer to (2k-1)*gamma
        BigInt m;
        Verdict locked = run_ladder(policy, [&](mpfr_prec_t p) {
            mpfr_prec_t pp = p + 8 + static_cast<mpfr_prec_t>(mpz_sizeinbase(BigInt(2 * k).get_mpz_t(), 2));
            Interval x = Interval::point_long(2 * k - 1, pp) * rot.gamma(pp);
            // m determined when [x - 1/2, x + 1/2) floors agree
            Interval shifted = x + Interval::of_rational(BigRational(1, 2), pp);
            mpz_class flo = shifted.lo().floor_integer();
            mpz_class fhi = shifted.hi().floor_integer();
            if (flo != fhi) return Verdict::unknown;
            m = flo;
            return Verdict::certified_true;
        });
        if (locked != Verdict::certified_true) {
            stop = { true, k, "nearest integer not separable at precision cap" };
            return false;
        }
        nearest.push_back(m);
        return true;
    }

    bool extend(long upto) {
        while (generated() < upto) {
            if (stop.stopped) return false;
            long k = generated() + 1;
            bool ok = exact_mode ? push_exact(k) : push_enclosure(k);
            if (!ok) return false;
            // update the two smallest *values*: exact duplicates collapse,
            // matching beta = min({delta_1..delta_k} \ {alpha}) on value sets
            if (k == 1) {
                alpha_idx.push_back(1);
                beta_idx.push_back(0); // undefined until a second distinct value
                continue;
            }
            long a = alpha_idx.back(), b = beta_idx.back();
            if (exact_mode) {
                int ca = dist_cmp(k, a);
                if (ca < 0) {
                    // the previous smallest value becomes the second smallest
                    alpha_idx.push_back(k);
                    beta_idx.push_back(a);
                } else if (ca == 0) {
                    alpha_idx.push_back(a);
                    beta_idx.push_back(b);
                } else if (b == 0) {
                    alpha_idx.push_back(a);
                    beta_idx.push_back(k);
                } else {
                    int cb = dist_cmp(k, b);
                    alpha_idx.push_back(a);
                    beta_idx.push_back(cb < 0 ? k : b);
                }
                continue;
            }
            Verdict below_alpha = dist_less(k, a);
            if (below_alpha == Verdict::unknown) {
                stop = { true, k, "minima not separable at the precision cap" };
                alpha_idx.push_back(a);
                beta_idx.push_back(b);
                return false;
            }
            if (below_alpha == Verdict::certified_true) {
                alpha_idx.push_back(k);
                beta_idx.push_back(a);
                continue;
            }
            if (b == 0) {
                alpha_idx.push_back(a);
                beta_idx.push_back(k);
                continue;
            }
            Verdict below_beta = dist_less(k, b);
            if (below_beta == Verdict::unknown) {
                stop = { true, k, "minima not separable at the precision cap" };
                alpha_idx.push_back(a);
                beta_idx.push_back(b);
                return false;
            }
            alpha_idx.push_back(a);
            beta_idx.push_back(below_beta == Verdict::certified_true ? k : b);
        }
        return true;
    }
};

DeltaEngine::DeltaEngine(const Rotation& rot, const PrecisionPolicy& policy)
    : impl_(std::make_unique<Impl>(rot, policy)) {}

DeltaEngine::~DeltaEngine() = default;

long DeltaEngine::generated() const { return impl_->generated(); }
bool DeltaEngine::extend(long k) { return impl_->extend(k); }
const DeltaEngine::Stop& DeltaEngine::stop() const { return impl_->stop; }

long DeltaEngine::alpha_index(long k) const {
    if (k < 1 || k > impl_->generated()) throw DomainViolation("alpha_index out of range");
    return impl_->alpha_idx[static_cast<size_t>(k - 1)];
}

long DeltaEngine::beta_index(long k) const {
    if (k < 2 || k > impl_->generated()) throw DomainViolation("beta_index out of range");
    return impl_->beta_idx[static_cast<size_t>(k - 1)];
}

Interval DeltaEngine::dist_interval(long k, mpfr_prec_t prec) const {
    if (k < 1 || k > impl_->generated()) throw DomainViolation("dist index out of range");
    return impl_->dist_enclosure(k, prec);
}

Interval DeltaEngine::delta_interval(long k, mpfr_prec_t prec) const {
    return Interval::pi(prec) * dist_interval(k, prec);
}

const QuadraticNumber& DeltaEngine::exact_dist(long k) const {
    if (!impl_->exact_mode) throw DomainViolation("engine is enclosure-backed");
    if (k < 1 || k > impl_->generated()) throw DomainViolation("dist index out of range");
    return impl_->dists[static_cast<size_t>(k - 1)];
}

bool DeltaEngine::exact() const { return impl_->exact_mode; }

Verdict DeltaEngine::alpha_below_pi_gamma(long k) const {
    long a = alpha_index(k);
    if (impl_->exact_mode) {
        int c = impl_->dists[static_cast<size_t>(a - 1)].cmp(impl_->gamma_exact);
        if (c == 0) return Verdict::unknown;
        return c < 0 ? Verdict::certified_true : Verdict::certified_false;
    }
    return run_ladder(impl_->policy, [&](mpfr_prec_t p) {
        return certify_less(impl_->dist_enclosure(a, p), impl_->rot.gamma(p));
    });
}

const Rotation& DeltaEngine::rotation() const { return impl_->rot; }

CheckCResult check_C(DeltaEngine& engine, long k, const PrecisionPolicy& policy) {
    CheckCResult res;
    if (k < 2) throw DomainViolation("check_C needs k >= 2");

    if (!engine.extend(k + 1)) {
        const auto& stop = engine.stop();
        // a vanishing delta_{k+1} certifiably violates the strict inequality
        // (F_plus and F_minus are strictly positive); other degeneracies are
        // reported, never guessed
        if (stop.at_k == k + 1 && stop.reason.rfind("distance is zero", 0) == 0) {
            res.verdict = Verdict::certified_false;
            res.note = "delta_{k+1} = 0";
            return res;
        }
        res.verdict = Verdict::unknown;
        res.note = stop.reason + " (at k=" + std::to_string(stop.at_k) + ")";
        return res;
    }

    if (engine.beta_index(k) == 0) {
        // every distance observed so far carries the same value; the pair
        // (alpha, beta) does not exist and the condition cannot be formed
        res.verdict = Verdict::unknown;
        res.note = "second smallest distance undefined (all values equal)";
        return res;
    }

    // F_minus domain: alpha_k < pi*gamma
    Verdict dom = engine.alpha_below_pi_gamma(k);
    if (dom != Verdict::certified_true) {
        res.verdict = Verdict::unknown;
        res.domain_edge = true;
        res.note = "F_minus domain edge: alpha_k vs pi*gamma not certified";
        return res;
    }

    long ai = engine.alpha_index(k);
    long bi = engine.beta_index(k);
    const Rotation& rot = engine.rotation();

    mpfr_prec_t used = 0;
    Verdict verdict = run_ladder(
        policy,
        [&](mpfr_prec_t p) {
            Interval pig = rot.pi_gamma(p);
            Interval alpha = Interval::pi(p) * engine.dist_interval(ai, p);
            Interval beta = Interval::pi(p) * engine.dist_interval(bi, p);
            Interval dnext = Interval::pi(p) * engine.dist_interval(k + 1, p);
            std::optional<Interval> fplus, fminus;
            try {
                Interval radius = rot.radius(p);
                fplus = F_plus_eval(radius, alpha, beta, pig);
                fminus = F_minus_eval(radius, alpha, pig);
            } catch (const DomainViolation&) {
                return Verdict::unknown;
            }
            if (!fplus || !fminus) return Verdict::unknown;

            Verdict vp = certify_less(*fplus, dnext);
            Verdict vm = certify_less(*fminus, dnext);

            const size_t digits = 20;
            res.fplus_lo = fplus->lo_decimal(digits);
            res.fplus_hi = fplus->hi_decimal(digits);
            res.fminus_lo = fminus->lo_decimal(digits);
            res.fminus_hi = fminus->hi_decimal(digits);
            res.delta_lo = dnext.lo_decimal(digits);
            res.delta_hi = dnext.hi_decimal(digits);
            res.margin = std::min(separation_margin(*fplus, dnext), separation_margin(*fminus, dnext));

            if (vp == Verdict::certified_false || vm == Verdict::certified_false)
                return Verdict::certified_false;
            if (vp == Verdict::certified_true && vm == Verdict::certified_true)
                return Verdict::certified_true;
            return Verdict::unknown;
        },
        &used);

    res.verdict = verdict;
    res.precision = used;
    return res;
}

} // namespace ballcert
