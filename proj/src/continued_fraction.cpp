#include "ballcert/continued_fraction.hpp"

#include "ballcert/errors.hpp"

#include <map>
#include <sstream>

namespace ballcert {

TailDescriptor TailDescriptor::periodic(size_t preperiod_len, std::vector<BigInt> period) {
    if (period.empty()) throw InputError("periodic tail needs a non-empty period");
    TailDescriptor t;
    t.kind = Kind::periodic;
    t.preperiod_len = preperiod_len;
    t.period = std::move(period);
    return t;
}

TailDescriptor TailDescriptor::bounded(BigInt bound) {
    if (bound < 1) throw InputError("tail bound must be >= 1");
    TailDescriptor t;
    t.kind = Kind::bounded;
    t.bound = std::move(bound);
    return t;
}

TailDescriptor TailDescriptor::polynomial_square(size_t from) {
    TailDescriptor t;
    t.kind = Kind::polynomial_square;
    t.poly_from = from;
    return t;
}

TailDescriptor TailDescriptor::unknown_tail(size_t depth) {
    TailDescriptor t;
    t.kind = Kind::unknown;
    t.depth = depth;
    return t;
}

std::string TailDescriptor::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::periodic:
            os << "periodic(preperiod=" << preperiod_len << ", period_len=" << period.size() << ")";
            break;
        case Kind::bounded: os << "bounded(" << bound << ")"; break;
        case Kind::polynomial_square: os << "poly_square(from=" << poly_from << ")"; break;
        case Kind::unknown: os << "unknown(depth=" << depth << ")"; break;
    }
    return os.str();
}

bool ContinuedFraction::digit_available(size_t j) const {
    if (tail.kind == TailDescriptor::Kind::periodic) return true;
    return j < digits.size();
}

BigInt ContinuedFraction::digit(size_t j) const {
    if (j < digits.size()) return digits[j];
    if (tail.kind == TailDescriptor::Kind::periodic) {
        size_t k = (j - tail.preperiod_len) % tail.period.size();
        return tail.period[k];
    }
    throw DomainViolation("continued fraction digit index beyond known range");
}

size_t ContinuedFraction::known_digits() const {
    return tail.kind == TailDescriptor::Kind::periodic ? SIZE_MAX : digits.size();
}

namespace {

// floor((P + sqrt(D))/Q) for non-square D >= 0, Q != 0, by integer arithmetic.
BigInt surd_floor(const BigInt& p, const BigInt& d, const BigInt& q) {
    BigInt r = isqrt(d); // sqrt(d) in (r, r+1), strictly (d non-square)
    if (q > 0) return floor_div(p + r, q);
    return floor_div(-p - r - 1, -q);
}

// canonicalize a detected (preperiod, period) pair: shrink the period to its
// fundamental block and absorb a preperiod suffix that duplicates the period
void minimize_periodic(std::vector<BigInt>& pre, std::vector<BigInt>& per) {
    for (size_t len = 1; len <= per.size() / 2; ++len) {
        if (per.size() % len != 0) continue;
        bool rep = true;
        for (size_t i = len; i < per.size() && rep; ++i)
            if (per[i] != per[i % len]) rep = false;
        if (rep) {
            per.resize(len);
            break;
        }
    }
    while (!pre.empty() && pre.back() == per.back()) {
        // rotate the period right by one and shorten the preperiod
        BigInt last = per.back();
        per.pop_back();
        per.insert(per.begin(), last);
        pre.pop_back();
    }
}

} // namespace

ContinuedFraction expand_surd(const QuadraticSurd& s) {
    BigInt d = s.d();
    BigInt p = s.p();
    BigInt q = s.q();
    std::vector<BigInt> digits;
    std::map<std::pair<BigInt, BigInt>, size_t> seen; // state before emitting digit i >= 1
    size_t first = 0, count = 0;
    for (size_t i = 0;; ++i) {
        if (i >= 1) {
            auto key = std::make_pair(p, q);
            auto it = seen.find(key);
            if (it != seen.end()) {
                first = it->second;
                count = i;
                break;
            }
            seen.emplace(key, i);
        }
        BigInt a = surd_floor(p, d, q);
        digits.push_back(a);
        p = a * q - p;
        q = (d - p * p) / q;
        if (q == 0) throw DomainViolation("surd iteration degenerated (rational input?)");
    }
    std::vector<BigInt> pre(digits.begin(), digits.begin() + first);
    std::vector<BigInt> per(digits.begin() + first, digits.begin() + count);
    minimize_periodic(pre, per);

    ContinuedFraction cf;
    cf.tail = TailDescriptor::periodic(pre.size(), per);
    cf.digits = std::move(pre);
    cf.digits.insert(cf.digits.end(), cf.tail.period.begin(), cf.tail.period.end());
    return cf;
}

QuadraticNumber periodic_value(const std::vector<BigInt>& preperiod,
                               const std::vector<BigInt>& period) {
    if (period.empty()) throw InputError("period must be non-empty");
    // purely periodic tail x = [b0; b1, ..., b_{m-1}, x] solves
    // q_{m-1} x^2 + (q_{m-2} - p_{m-1}) x - p_{m-2} = 0
    BigInt p0 = 1, q0 = 0;       // index -1
    BigInt p1 = period[0], q1 = 1;
    for (size_t i = 1; i < period.size(); ++i) {
        BigInt p2 = period[i] * p1 + p0;
        BigInt q2 = period[i] * q1 + q0;
        p0 = p1; q0 = q1;
        p1 = p2; q1 = q2;
    }
    BigInt lin = q0 - p1;
    BigInt disc = lin * lin + 4 * q1 * p0;
    QuadraticNumber x(-lin, 1, 2 * q1, disc); // positive root
    // fold the preperiod from the innermost digit outwards
    for (auto it = preperiod.rbegin(); it != preperiod.rend(); ++it)
        x = QuadraticNumber(BigRational(*it)) + QuadraticNumber(1) / x;
    return x;
}

StreamExpansion expand_stream(const RefinableReal& x, size_t max_digits,
                              const PrecisionPolicy& policy) {
    StreamExpansion out;
    mpfr_prec_t prec = policy.start;
    for (;;) {
        out.precision_used = prec;
        std::vector<BigInt> digits;
        Interval cur = x(prec);
        bool stalled = false;
        while (digits.size() < max_digits) {
            mpz_class flo = cur.lo().floor_integer();
            mpz_class fhi = cur.hi().floor_integer();
            if (flo != fhi) { stalled = true; break; }
            // exact integer enclosure means the input collapsed to a rational
            if (cur.lo().cmp(cur.hi()) == 0 && mpfr_integer_p(cur.lo().raw())) {
                digits.push_back(flo);
                out.digits = std::move(digits);
                out.rational_terminated = true;
                return out;
            }
            digits.push_back(flo);
            Interval frac = cur - Interval::of_integer(flo, prec);
            if (frac.contains_zero()) { digits.pop_back(); stalled = true; break; }
            cur = Interval::point_long(1, prec) / frac;
        }
        if (!stalled || digits.size() >= max_digits) {
            out.digits = std::move(digits);
            return out;
        }
        if (prec >= policy.cap) {
            out.digits = std::move(digits);
            out.precision_exhausted = true;
            return out;
        }
        prec = std::min<mpfr_prec_t>(prec * 2, policy.cap);
    }
}

const ConvergentRow& ConvergentTable::row(size_t j) const {
    if (j >= rows_.size()) throw DomainViolation("convergent index out of range");
    return rows_[j];
}

BigInt ConvergentTable::q_tilde(size_t j) const {
    const auto& r = row(j);
    if (!r.q_tilde) throw DomainViolation("q_tilde undefined: q_j is even");
    return *r.q_tilde;
}

ConvergentTable convergents(const ContinuedFraction& cf, size_t n) {
    if (!cf.digit_available(n)) throw DomainViolation("not enough digits for convergents");
    ConvergentTable t;
    BigInt pm1 = 1, qm1 = 0; // artificial index -1
    BigInt p = cf.digit(0), q = 1;
    for (size_t j = 0; j <= n; ++j) {
        if (j > 0) {
            BigInt a = cf.digit(j);
            BigInt pj = a * p + pm1;
            BigInt qj = a * q + qm1;
            pm1 = p; qm1 = q;
            p = pj; q = qj;
        }
        ConvergentRow row;
        row.j = j;
        row.p = p;
        row.q = q;
        if (mpz_odd_p(q.get_mpz_t())) row.q_tilde = (q + 1) / 2;
        t.rows_.push_back(std::move(row));
    }
    return t;
}

ParityReport parity_check(const ContinuedFraction& cf) {
    ParityReport rep;
    const bool periodic = cf.tail.kind == TailDescriptor::Kind::periodic;

    // indices that pin down "a_j even for every j >= 4" for a periodic tail:
    // one full period past max(preperiod_len, 4) covers every tail residue
    size_t decisive_end;
    if (periodic)
        decisive_end = std::max(cf.tail.preperiod_len, size_t(4)) + cf.tail.period.size();
    else
        decisive_end = cf.digits.size();

    if (!periodic && cf.digits.size() < 4) {
        rep.verdict = Verdict::unknown;
        rep.detail = "fewer than 4 digits available";
        return rep;
    }

    auto fail = [&rep](const std::string& why) {
        rep.verdict = Verdict::certified_false;
        rep.detail = why;
        return rep;
    };

    if (cf.digit(0) != 0) return fail("a_0 != 0");
    if (cf.digit(1) != 2) return fail("a_1 != 2");
    if (mpz_even_p(cf.digit(3).get_mpz_t())) return fail("a_3 is even");
    for (size_t j = 4; j < decisive_end; ++j) {
        if (!cf.digit_available(j)) break;
        if (mpz_odd_p(cf.digit(j).get_mpz_t()))
            return fail("a_" + std::to_string(j) + " is odd");
        rep.checked_digits = j + 1;
    }
    if (periodic) {
        rep.verdict = Verdict::certified_true;
        rep.checked_digits = decisive_end;
    } else {
        // open tail: all observed digits comply, but the pattern quantifies
        // over every j, so the best we can report is unknown
        rep.verdict = Verdict::unknown;
        rep.detail = "tail not periodic; digits comply up to depth";
    }

    if (rep.verdict == Verdict::certified_true) {
        // self-check: the recursion must yield odd q_j for j >= 2
        size_t upto = std::min<size_t>(decisive_end + 4, 64);
        ConvergentTable t = convergents(cf, upto);
        for (size_t j = 2; j <= upto; ++j) {
            if (mpz_even_p(t.q(j).get_mpz_t()))
                throw Error("parity self-check failed: q_" + std::to_string(j) + " even");
        }
    }
    return rep;
}

DiophantineReport diophantine_bounds_check(const ContinuedFraction& cf,
                                           const ConvergentTable& table,
                                           const QuadraticSurd& gamma, size_t max_j,
                                           size_t best_approx_max_j) {
    DiophantineReport rep;
    QuadraticNumber g = gamma.value();
    std::ostringstream detail;

    size_t jmax = std::min(max_j, table.max_index());

    // Two-sided bound: 1/(q_k (a_{k+1}+2)) < |q_k g - p_k| < 1/q_{k+1}
    for (size_t k = 0; k + 1 <= jmax && rep.two_sided_ok; ++k) {
        QuadraticNumber err =
            (QuadraticNumber(BigRational(table.q(k))) * g - QuadraticNumber(BigRational(table.p(k))))
                .abs();
        BigRational lo(1, table.q(k) * (cf.digit(k + 1) + 2));
        BigRational hi(1, table.q(k + 1));
        if (!(QuadraticNumber(lo) < err && err < QuadraticNumber(hi))) {
            rep.two_sided_ok = false;
            detail << "two-sided bound failed at k=" << k << "; ";
        }
    }

    // Best approximation: |q g - p| >= |q_k g - p_k| for all q <= q_k
    size_t kb = std::min(best_approx_max_j, jmax);
    for (size_t k = 1; k <= kb && rep.best_approx_ok; ++k) {
        QuadraticNumber best =
            (QuadraticNumber(BigRational(table.q(k))) * g - QuadraticNumber(BigRational(table.p(k))))
                .abs();
        for (BigInt q = 1; q <= table.q(k) && rep.best_approx_ok; ++q) {
            QuadraticNumber qg = QuadraticNumber(BigRational(q)) * g;
            BigInt p = qg.nearest_integer();
            QuadraticNumber err = (qg - QuadraticNumber(BigRational(p))).abs();
            if (err < best) {
                rep.best_approx_ok = false;
                detail << "best-approximation failed at k=" << k << " q=" << q << "; ";
            }
        }
    }

    // Exponential growth: q_j >= 2^{(j-1)/2}, exactly as q_j^2 >= 2^{j-1}
    for (size_t j = 2; j <= jmax && rep.growth_ok; ++j) {
        BigInt lhs = table.q(j) * table.q(j);
        BigInt rhs;
        mpz_ui_pow_ui(rhs.get_mpz_t(), 2, static_cast<unsigned long>(j - 1));
        if (lhs < rhs) {
            rep.growth_ok = false;
            detail << "growth bound failed at j=" << j << "; ";
        }
    }

    rep.detail = detail.str();
    return rep;
}

} // namespace ballcert
