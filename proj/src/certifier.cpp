#include "ballcert/certifier.hpp"

#include "ballcert/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <climits>
#include <sstream>

namespace ballcert {

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::member_of_A: return "member_of_A";
        case Outcome::not_certified: return "not_certified";
        case Outcome::depth_limited: return "depth_limited";
        default: return "undecidable";
    }
}

namespace {

constexpr const char* kToolVersion = "ballcert 0.1.0";

// max coefficient over digit indices >= from (period digits recur forever)
BigInt max_tail_digit(const ContinuedFraction& cf, size_t from) {
    if (cf.tail.kind != TailDescriptor::Kind::periodic)
        throw DomainViolation("max_tail_digit needs a periodic tail");
    BigInt m = 0;
    for (const auto& d : cf.tail.period) m = std::max(m, d);
    for (size_t j = from; j < cf.tail.preperiod_len; ++j) m = std::max(m, cf.digit(j));
    return m;
}

// tri-valued "lhs <= n" for an integer right-hand side
Verdict certify_leq_integer(const Interval& lhs, const BigInt& n) {
    if (mpfr_cmp_z(lhs.hi().raw(), n.get_mpz_t()) <= 0) return Verdict::certified_true;
    if (mpfr_cmp_z(lhs.lo().raw(), n.get_mpz_t()) > 0) return Verdict::certified_false;
    return Verdict::unknown;
}

// pi / (cos(pi/qa) * sqrt(R^2 cos(pi/qb)^2 - 1)) * mult
std::optional<Interval> condition_a_lhs(const Rotation& rot, const Interval& qa,
                                        const Interval& qb, const BigInt& mult, mpfr_prec_t p) {
    try {
        Interval pi = Interval::pi(p);
        Interval ca = cos(pi / qa);
        Interval cb = cos(pi / qb);
        Interval r = rot.radius(p);
        Interval inner = r * r * cb * cb - Interval::point_long(1, p);
        if (!inner.is_positive() || !ca.is_positive()) return std::nullopt;
        return pi * Interval::of_integer(mult, p) / (ca * sqrt(inner));
    } catch (const DomainViolation&) {
        return std::nullopt;
    }
}

std::string big_str(const BigInt& n) { return n.get_str(); }

} // namespace

J0Result select_j0(const ContinuedFraction& cf, const ConvergentTable& table, const Rotation& rot,
                   size_t depth, const PrecisionPolicy& policy,
                   const std::optional<BigInt>& bound_override) {
    J0Result out;
    const bool periodic = cf.tail.kind == TailDescriptor::Kind::periodic;
    if (!periodic && !bound_override && cf.tail.kind != TailDescriptor::Kind::bounded)
        throw DomainViolation("select_j0 needs a periodic or bounded tail");

    size_t max_j = std::min(depth, table.max_index() >= 1 ? table.max_index() - 1 : 0);
    for (size_t j0 = 3; j0 <= max_j; ++j0) {
        BigInt m;
        if (bound_override)
            m = *bound_override;
        else if (periodic)
            m = max_tail_digit(cf, j0 + 2);
        else
            m = cf.tail.bound;
        // known digits past j0+2 must respect the bound as well
        for (size_t j = j0 + 2; j < cf.digits.size(); ++j) m = std::max(m, cf.digit(j));

        const BigInt& qj = table.q(j0);
        const BigInt& qj1 = table.q(j0 + 1);
        mpfr_prec_t used = 0;
        CheckRecord rec;
        Verdict v = run_ladder(
            policy,
            [&](mpfr_prec_t p) {
                auto lhs = condition_a_lhs(rot, Interval::of_integer(qj, p),
                                           Interval::of_integer(qj1, p), m + 2, p);
                if (!lhs) return Verdict::unknown;
                rec.lhs_lo = lhs->lo_decimal(20);
                rec.lhs_hi = lhs->hi_decimal(20);
                rec.margin = separation_margin(*lhs, Interval::of_integer(qj, p));
                return certify_leq_integer(*lhs, qj);
            },
            &used);
        if (v == Verdict::certified_true) {
            out.found = true;
            out.j0 = j0;
            out.tail_max = m;
            rec.kind = "cond_a";
            rec.indices = { BigInt(j0) };
            rec.rhs_lo = big_str(qj);
            rec.rhs_hi = big_str(qj);
            rec.verdict = v;
            rec.precision = used;
            rec.note = "tail coefficient bound M=" + big_str(m);
            out.record = std::move(rec);
            return out;
        }
    }
    return out; // not found within depth
}

ClosureResult close_condition_a(const J0Result& j0res, const ConvergentTable& table) {
    ClosureResult res;
    if (!j0res.found) {
        res.verdict = Verdict::unknown;
        res.note = "no admissible j0 within search depth";
        return res;
    }
    // q_j is strictly increasing for j >= 1 (a_j >= 1), so both the cosine
    // factors and the right-hand side improve with j; the j0 witness closes
    // every j >= j0.
    res.verdict = Verdict::certified_true;
    res.records.push_back(j0res.record);
    res.covered_from = table.q_tilde(j0res.j0);
    res.note = "witness at j0 plus monotonicity";
    return res;
}

ClosureResult close_condition_a_polynomial(const ContinuedFraction& cf,
                                           const ConvergentTable& table, const Rotation& rot,
                                           size_t j0, size_t poly_from,
                                           const PrecisionPolicy& policy) {
    ClosureResult res;
    if (j0 < 3) throw DomainViolation("j0 must be >= 3");

    // the tail claim must hold on the digits we can see
    for (size_t j = std::max(poly_from, size_t(1)); j < cf.digits.size(); ++j) {
        BigInt jj(static_cast<unsigned long>(j));
        if (cf.digit(j) > jj * jj) {
            res.verdict = Verdict::certified_false;
            res.tail_claim_violated = true;
            res.note = "digit a_" + std::to_string(j) + " violates the a_j <= j^2 claim";
            return res;
        }
    }

    auto u = [](size_t j) -> BigInt {
        BigInt t(static_cast<unsigned long>(j + 2));
        return t * t + 2;
    };
    // 2^{(j-1)/2} as an interval
    auto pow_half = [](size_t j, mpfr_prec_t p) {
        BigInt e;
        mpz_ui_pow_ui(e.get_mpz_t(), 2, static_cast<unsigned long>(j - 1));
        return sqrt(Interval::of_integer(e, p));
    };

    // crossover search: first j* with
    //   (i)  pi*u(j*) <= cos(pi/L_{j*}) sqrt(R^2 cos(pi/L_{j*+1})^2 - 1) L_{j*}
    //   (ii) u(j*+1)^2 <= 2 u(j*)^2   (the growth ratio stays under sqrt(2)
    //        from j* on, because the ratio is decreasing)
    const size_t search_limit = j0 + 96;
    std::optional<size_t> crossover;
    for (size_t j = j0; j <= search_limit; ++j) {
        BigInt uj = u(j), uj1 = u(j + 1);
        if (uj1 * uj1 > 2 * uj * uj) continue; // (ii) fails
        Verdict v = run_ladder(policy, [&](mpfr_prec_t p) {
            Interval lj = pow_half(j, p);
            Interval lj1 = pow_half(j + 1, p);
            auto lhs = condition_a_lhs(rot, lj, lj1, uj, p);
            if (!lhs) return Verdict::unknown;
            return certify_less(*lhs, lj);
        });
        if (v == Verdict::certified_true) {
            crossover = j;
            break;
        }
    }
    if (!crossover) {
        res.verdict = Verdict::unknown;
        res.note = "no crossover index found";
        return res;
    }

    CheckRecord cross;
    cross.kind = "cond_a_tail";
    cross.indices = { BigInt(static_cast<unsigned long>(*crossover)) };
    cross.verdict = Verdict::certified_true;
    cross.note = "crossover: conservative bound q_j >= 2^{(j-1)/2}, both sides monotone beyond";
    res.records.push_back(cross);

    // individual indices j0..crossover-1 with actual denominators where
    // available, the conservative bound otherwise
    for (size_t j = j0; j < *crossover; ++j) {
        bool have_q = table.max_index() >= j + 1;
        BigInt bound_a;
        if (j + 2 >= poly_from) {
            bound_a = u(j);
        } else if (cf.digit_available(j + 2)) {
            bound_a = cf.digit(j + 2) + 2;
        } else {
            res.verdict = Verdict::unknown;
            res.note = "digit a_" + std::to_string(j + 2) + " unavailable below poly_from";
            return res;
        }
        mpfr_prec_t used = 0;
        CheckRecord rec;
        Verdict v = run_ladder(
            policy,
            [&](mpfr_prec_t p) {
                Interval qa = have_q ? Interval::of_integer(table.q(j), p) : pow_half(j, p);
                Interval qb = have_q && table.max_index() >= j + 1
                                  ? Interval::of_integer(table.q(j + 1), p)
                                  : pow_half(j + 1, p);
                auto lhs = condition_a_lhs(rot, qa, qb, bound_a, p);
                if (!lhs) return Verdict::unknown;
                rec.lhs_lo = lhs->lo_decimal(20);
                rec.lhs_hi = lhs->hi_decimal(20);
                if (have_q) return certify_leq_integer(*lhs, table.q(j));
                return certify_less(*lhs, qa);
            },
            &used);
        rec.kind = "cond_a_tail";
        rec.indices = { BigInt(static_cast<unsigned long>(j)) };
        rec.verdict = v;
        rec.precision = used;
        res.records.push_back(std::move(rec));
        if (v != Verdict::certified_true) {
            res.verdict = v;
            res.note = "per-index check failed at j=" + std::to_string(j);
            return res;
        }
    }

    res.verdict = Verdict::certified_true;
    res.covered_from = table.q_tilde(j0);
    res.note = "per-index checks to crossover " + std::to_string(*crossover);
    return res;
}

namespace {

// delta_{q~_j} = pi |q_j gamma - p_j| for an exact gamma, as exact distance
QuadraticNumber convergent_dist(const Rotation& rot, const ConvergentTable& table, size_t j) {
    const QuadraticNumber& g = rot.exact_gamma();
    return (QuadraticNumber(BigRational(table.q(j))) * g - QuadraticNumber(BigRational(table.p(j))))
        .abs();
}

} // namespace

BandResult check_condition_b(const Rotation& rot, const ConvergentTable& table, size_t j0,
                             const PrecisionPolicy& policy) {
    BandResult res;
    if (j0 < 4) {
        res.note = "vacuous: j0 < 4";
        return res;
    }
    if (!rot.exact_irrational())
        throw DomainViolation("condition (b) needs an exact irrational gamma");

    for (size_t j = 4; j <= j0; ++j) {
        QuadraticNumber da = convergent_dist(rot, table, j - 1); // alpha-bound
        QuadraticNumber db = convergent_dist(rot, table, j - 2); // beta-bound (larger)
        QuadraticNumber dn = convergent_dist(rot, table, j);
        mpfr_prec_t used = 0;
        CheckRecord rec;
        Verdict v = run_ladder(
            policy,
            [&](mpfr_prec_t p) {
                Interval pi = Interval::pi(p);
                Interval alpha = pi * da.enclosure(p);
                Interval beta = pi * db.enclosure(p);
                Interval rhs = pi * dn.enclosure(p);
                std::optional<Interval> fplus, fminus;
                try {
                    Interval radius = rot.radius(p);
                    fplus = F_plus_eval(radius, alpha, beta, rot.pi_gamma(p));
                    fminus = F_minus_eval(radius, alpha, rot.pi_gamma(p));
                } catch (const DomainViolation&) {
                    return Verdict::unknown;
                }
                if (!fplus || !fminus) return Verdict::unknown;
                rec.lhs_lo = fplus->lo_decimal(20);
                rec.lhs_hi = fplus->hi_decimal(20);
                rec.rhs_lo = rhs.lo_decimal(20);
                rec.rhs_hi = rhs.hi_decimal(20);
                rec.margin =
                    std::min(separation_margin(*fplus, rhs), separation_margin(*fminus, rhs));
                Verdict vp = certify_less(*fplus, rhs);
                Verdict vm = certify_less(*fminus, rhs);
                if (vp == Verdict::certified_false || vm == Verdict::certified_false)
                    return Verdict::certified_false;
                if (vp == Verdict::certified_true && vm == Verdict::certified_true)
                    return Verdict::certified_true;
                return Verdict::unknown;
            },
            &used);
        rec.kind = "cond_b";
        rec.indices = { BigInt(static_cast<unsigned long>(j)) };
        rec.verdict = v;
        rec.precision = used;
        res.records.push_back(std::move(rec));
        if (v != Verdict::certified_true) {
            res.verdict = v;
            res.note = "condition (b) not certified at j=" + std::to_string(j);
            return res;
        }
    }
    CoverageRange cov;
    cov.lo = table.q_tilde(3);
    cov.hi = table.q_tilde(j0) - 1;
    cov.source = "cond_b";
    res.coverage.push_back(std::move(cov));
    return res;
}

BandResult check_condition_c(DeltaEngine& engine, const ConvergentTable& table,
                             const PrecisionPolicy& policy) {
    BandResult res;
    BigInt qt2 = table.q_tilde(2);
    BigInt qt3 = table.q_tilde(3);
    if (!(qt2 >= 3 && qt2 <= qt3 - 2)) {
        res.note = "skipped: requires 3 <= q~_2 <= q~_3 - 2";
        return res;
    }
    if (qt2 - 1 > BigInt(LONG_MAX)) throw DomainViolation("q~_2 out of addressable range");
    long k = static_cast<long>(mpz_get_si(BigInt(qt2 - 1).get_mpz_t()));
    CheckCResult c = check_C(engine, k, policy);
    CheckRecord rec;
    rec.kind = "cond_c";
    rec.indices = { BigInt(k) };
    rec.lhs_lo = c.fplus_lo;
    rec.lhs_hi = c.fplus_hi;
    rec.rhs_lo = c.delta_lo;
    rec.rhs_hi = c.delta_hi;
    rec.margin = c.margin;
    rec.verdict = c.verdict;
    rec.precision = c.precision;
    rec.note = c.note;
    res.records.push_back(std::move(rec));
    res.verdict = c.verdict;
    if (c.verdict == Verdict::certified_true) {
        CoverageRange cov;
        cov.lo = qt2 - 1;
        cov.hi = qt3 - 2;
        cov.source = "cond_c";
        res.coverage.push_back(std::move(cov));
    }
    return res;
}

std::vector<BigInt> coverage_gaps(const std::vector<CoverageRange>& ranges, size_t cap) {
    std::optional<BigInt> inf_from;
    std::vector<std::pair<BigInt, BigInt>> finite;
    for (const auto& r : ranges) {
        if (!r.hi) {
            if (!inf_from || r.lo < *inf_from) inf_from = r.lo;
        } else if (*r.hi >= r.lo) {
            finite.emplace_back(r.lo, *r.hi);
        }
    }
    if (!inf_from) throw DomainViolation("coverage has no unbounded range");
    std::sort(finite.begin(), finite.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<BigInt> gaps;
    BigInt next = 2;
    size_t idx = 0;
    while (next < *inf_from) {
        // skip ranges that already cover `next`
        bool covered = false;
        for (size_t i = idx; i < finite.size() && finite[i].first <= next; ++i) {
            if (finite[i].second >= next) {
                next = finite[i].second + 1;
                covered = true;
                break;
            }
            idx = i + 1;
        }
        if (covered) continue;
        gaps.push_back(next);
        if (gaps.size() > cap)
            throw PrecisionExhausted("uncovered index set exceeds the direct-check cap");
        next += 1;
    }
    return gaps;
}

namespace {

void record_enclosures(Certificate& cert, const Rotation& rot, const PrecisionPolicy& policy) {
    const size_t digits = 20;
    mpfr_prec_t p = policy.start;
    Interval g = rot.gamma(p);
    cert.gamma_lo = g.lo_decimal(digits);
    cert.gamma_hi = g.hi_decimal(digits);
    cert.gamma_prec = p;
    for (;;) {
        try {
            Interval r = rot.radius(p);
            Interval a = rot.area(p);
            cert.radius_lo = r.lo_decimal(digits);
            cert.radius_hi = r.hi_decimal(digits);
            cert.area_lo = a.lo_decimal(digits);
            cert.area_hi = a.hi_decimal(digits);
            return;
        } catch (const DomainViolation&) {
            // gamma outside the formula domain: R and A have no enclosure
            if (p >= policy.cap) return;
            p *= 2;
        }
    }
}

void bump_precision(Certificate& cert, mpfr_prec_t p) {
    cert.max_precision = std::max(cert.max_precision, p);
}

void append_records(Certificate& cert, const std::vector<CheckRecord>& recs) {
    for (const auto& r : recs) {
        bump_precision(cert, r.precision);
        cert.checks.push_back(r);
    }
}

// shared final stage: direct checks over the uncovered indices
void run_direct_checks(Certificate& cert, DeltaEngine& engine, const std::vector<BigInt>& gaps,
                       const CertifyOptions& opt) {
    for (const auto& kz : gaps) {
        if (kz > BigInt(LONG_MAX / 4)) {
            cert.outcome = Outcome::undecidable;
            cert.reason = "uncovered index beyond addressable range";
            return;
        }
        long k = static_cast<long>(mpz_get_si(kz.get_mpz_t()));
        CheckCResult c = check_C(engine, k, opt.precision);
        CheckRecord rec;
        rec.kind = "direct_C";
        rec.indices = { kz };
        rec.lhs_lo = c.fplus_lo;
        rec.lhs_hi = c.fplus_hi;
        rec.rhs_lo = c.delta_lo;
        rec.rhs_hi = c.delta_hi;
        rec.margin = c.margin;
        rec.verdict = c.verdict;
        rec.precision = c.precision;
        rec.note = c.note;
        cert.checks.push_back(rec);
        bump_precision(cert, c.precision);
        cert.direct_indices.push_back(kz);
        if (c.verdict == Verdict::certified_false) {
            cert.outcome = Outcome::not_certified;
            cert.reason = "C(A," + std::to_string(k) + ") certifiably fails";
            return;
        }
        if (c.verdict == Verdict::unknown) {
            cert.outcome = Outcome::undecidable;
            cert.reason = "C(A," + std::to_string(k) + ") undecided at precision cap" +
                          (c.domain_edge ? " (domain edge)" : "");
            return;
        }
        CoverageRange cov;
        cov.lo = kz;
        cov.hi = kz;
        cov.source = "direct_C";
        cert.coverage.push_back(std::move(cov));
    }
    cert.outcome = Outcome::member_of_A;
}

} // namespace

Certificate certify(const QuadraticSurd& s, const CertifyOptions& opt) {
    Certificate cert;
    cert.input_kind = "surd";
    cert.input_text = big_str(s.p()) + "," + big_str(s.d()) + "," + big_str(s.q());

    Rotation rot = Rotation::of_surd(s);

    Verdict window = rot.in_window(opt.precision);
    if (window != Verdict::certified_true) {
        record_enclosures(cert, rot, opt.precision);
        cert.outcome = window == Verdict::certified_false ? Outcome::not_certified
                                                          : Outcome::undecidable;
        cert.reason = "gamma outside the window (arctan(2)/pi, 1/2)";
        return cert;
    }
    record_enclosures(cert, rot, opt.precision);

    ContinuedFraction cf = expand_surd(s);
    cert.cf_preperiod.assign(cf.digits.begin(), cf.digits.begin() + cf.tail.preperiod_len);
    cert.cf_period = cf.tail.period;
    cert.tail_text = cf.tail.str();

    ParityReport parity = parity_check(cf);
    cert.parity = parity.verdict;
    cert.parity_detail = parity.detail;
    if (parity.verdict != Verdict::certified_true) {
        cert.outcome = parity.verdict == Verdict::certified_false ? Outcome::not_certified
                                                                  : Outcome::undecidable;
        cert.reason = "parity: " + parity.detail;
        return cert;
    }

    size_t depth = std::max<size_t>(opt.j0_search_depth, 8);
    ConvergentTable table = convergents(cf, depth + 1);

    // tail closure of condition (a)
    ClosureResult closure;
    long j0 = -1;
    if (opt.tail == TailStrategy::polynomial) {
        size_t poly_from = 4;
        for (size_t j = 3; j <= depth; ++j) {
            closure = close_condition_a_polynomial(cf, table, rot, j, poly_from, opt.precision);
            if (closure.verdict == Verdict::certified_true) {
                j0 = static_cast<long>(j);
                break;
            }
            // a refuted tail claim is final; a failed sufficient inequality
            // at this j0 just means the next index must be tried
            if (closure.tail_claim_violated) break;
        }
    } else {
        std::optional<BigInt> bound;
        if (opt.tail == TailStrategy::bounded) bound = opt.tail_bound;
        J0Result j0res = select_j0(cf, table, rot, depth, opt.precision, bound);
        closure = close_condition_a(j0res, table);
        if (j0res.found) j0 = static_cast<long>(j0res.j0);
    }
    cert.j0 = j0;
    append_records(cert, closure.records);
    if (closure.verdict != Verdict::certified_true || !closure.covered_from) {
        cert.outcome = closure.verdict == Verdict::certified_false ? Outcome::not_certified
                                                                   : Outcome::undecidable;
        cert.reason = "condition (a) tail closure failed: " + closure.note;
        return cert;
    }
    CoverageRange tail_cov;
    tail_cov.lo = *closure.covered_from;
    tail_cov.hi = std::nullopt;
    tail_cov.source = "cond_a";
    cert.coverage.push_back(tail_cov);

    DeltaEngine engine(rot, opt.precision);

    // conditions (b) and (c) pay off only when the residual band is wide
    BigInt residual = *closure.covered_from - 2;
    bool use_bc = opt.bc_mode == CertifyOptions::BcMode::always ||
                  (opt.bc_mode == CertifyOptions::BcMode::adaptive &&
                   residual > BigInt(static_cast<unsigned long>(opt.bc_threshold)));
    if (use_bc && j0 >= 4) {
        BandResult b = check_condition_b(rot, table, static_cast<size_t>(j0), opt.precision);
        append_records(cert, b.records);
        if (b.verdict == Verdict::certified_true)
            for (auto& c : b.coverage) cert.coverage.push_back(c);
        BandResult c = check_condition_c(engine, table, opt.precision);
        append_records(cert, c.records);
        if (c.verdict == Verdict::certified_true)
            for (auto& r : c.coverage) cert.coverage.push_back(r);
    }

    std::vector<BigInt> gaps;
    try {
        gaps = coverage_gaps(cert.coverage, opt.direct_cap);
    } catch (const PrecisionExhausted&) {
        cert.outcome = Outcome::undecidable;
        cert.reason = "uncovered index set exceeds the direct-check cap";
        return cert;
    }

    run_direct_checks(cert, engine, gaps, opt);
    if (cert.outcome == Outcome::member_of_A) cert.reason = "all conditions certified";
    return cert;
}

Certificate certify_area(const BigRational& area, const std::string& area_text,
                         const CertifyOptions& opt) {
    Certificate cert;
    cert.input_kind = "area";
    cert.input_text = area_text;
    cert.area_depth = opt.area_depth;

    std::optional<Rotation> maybe_rot;
    try {
        maybe_rot = Rotation::of_area(area, opt.precision);
    } catch (const AreaTooSmall& e) {
        // A <= 8*omega_3 cannot belong to the certified set
        cert.outcome = Outcome::not_certified;
        cert.reason = e.what();
        return cert;
    }
    Rotation& rot = *maybe_rot;

    Verdict window = rot.in_window(opt.precision);
    record_enclosures(cert, rot, opt.precision);
    if (window != Verdict::certified_true) {
        cert.outcome = window == Verdict::certified_false ? Outcome::not_certified
                                                          : Outcome::undecidable;
        cert.reason = "gamma outside the window (arctan(2)/pi, 1/2)";
        return cert;
    }

    StreamExpansion stream =
        expand_stream(gamma_enclosure_from_area(area), opt.area_cf_digits, opt.precision);
    cert.cf_digits = stream.digits;
    ContinuedFraction cf;
    cf.digits = stream.digits;
    cf.tail = TailDescriptor::unknown_tail(stream.digits.size());
    cert.tail_text = cf.tail.str();

    // parity is a premise of the tail reduction only; an enclosure-backed
    // input never reaches the tail closure, so the report is recorded and
    // the depth-limited direct checks proceed either way
    ParityReport parity = parity_check(cf);
    cert.parity = parity.verdict;
    cert.parity_detail = parity.detail;

    // no certifiable tail: check C(A,k) for k = 2..K only
    DeltaEngine engine(rot, opt.precision);
    for (long k = 2; k <= opt.area_depth; ++k) {
        CheckCResult c = check_C(engine, k, opt.precision);
        CheckRecord rec;
        rec.kind = "direct_C";
        rec.indices = { BigInt(k) };
        rec.margin = c.margin;
        rec.verdict = c.verdict;
        rec.precision = c.precision;
        rec.lhs_lo = c.fplus_lo;
        rec.lhs_hi = c.fplus_hi;
        rec.rhs_lo = c.delta_lo;
        rec.rhs_hi = c.delta_hi;
        rec.note = c.note;
        cert.checks.push_back(rec);
        bump_precision(cert, c.precision);
        if (c.verdict == Verdict::certified_false) {
            cert.outcome = Outcome::not_certified;
            cert.reason = "C(A," + std::to_string(k) + ") certifiably fails";
            return cert;
        }
        if (c.verdict == Verdict::unknown) {
            cert.outcome = Outcome::undecidable;
            cert.reason = "C(A," + std::to_string(k) + ") undecided at precision cap";
            return cert;
        }
    }
    CoverageRange cov;
    cov.lo = 2;
    cov.hi = BigInt(opt.area_depth);
    cov.source = "direct_C";
    cert.coverage.push_back(cov);
    cert.outcome = Outcome::depth_limited;
    cert.reason = "all C(A,k) certified for k <= " + std::to_string(opt.area_depth) +
                  "; tail not certifiable from an enclosure";
    return cert;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

nlohmann::ordered_json digits_json(const std::vector<BigInt>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : v) {
        if (d.fits_slong_p())
            arr.push_back(d.get_si());
        else
            arr.push_back(d.get_str());
    }
    return arr;
}

} // namespace

nlohmann::ordered_json Certificate::to_json() const {
    nlohmann::ordered_json j;
    j["input"] = { { "kind", input_kind }, { "value", input_text } };
    if (input_kind == "area") j["input"]["depth"] = area_depth;
    j["gamma"] = { { "lo", gamma_lo }, { "hi", gamma_hi }, { "prec", gamma_prec } };
    j["radius"] = { { "lo", radius_lo }, { "hi", radius_hi } };
    j["area"] = { { "lo", area_lo }, { "hi", area_hi } };
    nlohmann::ordered_json cf;
    if (!cf_period.empty()) {
        cf["preperiod"] = digits_json(cf_preperiod);
        cf["period"] = digits_json(cf_period);
    } else {
        cf["digits"] = digits_json(cf_digits);
    }
    cf["tail"] = tail_text;
    j["cf"] = cf;
    j["parity"] = to_string(parity);
    j["j0"] = j0;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : this->checks) {
        nlohmann::ordered_json rec;
        rec["kind"] = c.kind;
        rec["indices"] = digits_json(c.indices);
        rec["lhs"] = { { "lo", c.lhs_lo }, { "hi", c.lhs_hi } };
        rec["rhs"] = { { "lo", c.rhs_lo }, { "hi", c.rhs_hi } };
        rec["margin"] = c.margin;
        rec["verdict"] = to_string(c.verdict);
        checks.push_back(rec);
    }
    j["checks"] = checks;
    nlohmann::ordered_json cov = nlohmann::ordered_json::array();
    for (const auto& r : coverage) {
        nlohmann::ordered_json range;
        range["lo"] = r.lo.get_str();
        range["hi"] = r.hi ? nlohmann::ordered_json(r.hi->get_str()) : nlohmann::ordered_json(nullptr);
        range["source"] = r.source;
        cov.push_back(range);
    }
    j["coverage"] = cov;
    nlohmann::ordered_json oc;
    oc["kind"] = to_string(outcome);
    if (!reason.empty()) oc["reason"] = reason;
    if (outcome == Outcome::depth_limited) oc["depth"] = area_depth;
    j["outcome"] = oc;
    j["max_precision_bits"] = max_precision;
    j["tool_version"] = kToolVersion;
    return j;
}

} // namespace ballcert
