#include "ballcert/interval.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

namespace ballcert {

std::string BigFloat::decimal(size_t digits, mpfr_rnd_t rnd) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, rnd);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    // strip trailing zeros but keep at least one digit
    size_t last = d.find_last_not_of('0');
    d = d.substr(0, std::max<size_t>(last + 1, 1));
    std::string out = (neg ? "-" : "");
    out += "0.";
    out += d;
    out += "e";
    out += std::to_string(static_cast<long>(e));
    return out;
}

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.is_nan() || hi_.is_nan() || lo_.cmp(hi_) > 0)
        throw DomainViolation("interval: invalid endpoints");
}

Interval Interval::point_long(long x, mpfr_prec_t prec) {
    return { BigFloat::of_long(x, prec, MPFR_RNDD), BigFloat::of_long(x, prec, MPFR_RNDU) };
}

Interval Interval::of_integer(const mpz_class& x, mpfr_prec_t prec) {
    return { BigFloat::of_integer(x, prec, MPFR_RNDD), BigFloat::of_integer(x, prec, MPFR_RNDU) };
}

Interval Interval::of_rational(const mpq_class& x, mpfr_prec_t prec) {
    return { BigFloat::of_rational(x, prec, MPFR_RNDD), BigFloat::of_rational(x, prec, MPFR_RNDU) };
}

Interval Interval::of_double(double x, mpfr_prec_t prec) {
    return { BigFloat::of_double(x, prec, MPFR_RNDD), BigFloat::of_double(x, prec, MPFR_RNDU) };
}

namespace {

// Shared cache of pi enclosures keyed by precision: initialize-once, read-many.
std::mutex g_pi_mutex;
std::map<mpfr_prec_t, std::pair<BigFloat, BigFloat>>& pi_cache() {
    static std::map<mpfr_prec_t, std::pair<BigFloat, BigFloat>> cache;
    return cache;
}

} // namespace

Interval Interval::pi(mpfr_prec_t prec) {
    std::lock_guard<std::mutex> lock(g_pi_mutex);
    auto& cache = pi_cache();
    auto it = cache.find(prec);
    if (it == cache.end()) {
        BigFloat lo(prec), hi(prec);
        mpfr_const_pi(lo.raw(), MPFR_RNDD);
        mpfr_const_pi(hi.raw(), MPFR_RNDU);
        it = cache.emplace(prec, std::make_pair(std::move(lo), std::move(hi))).first;
    }
    return { it->second.first, it->second.second };
}

BigFloat Interval::width() const {
    BigFloat w(precision());
    mpfr_sub(w.raw(), hi_.raw(), lo_.raw(), MPFR_RNDU);
    return w;
}

double Interval::mid_double() const {
    BigFloat m(precision());
    mpfr_add(m.raw(), lo_.raw(), hi_.raw(), MPFR_RNDN);
    mpfr_div_ui(m.raw(), m.raw(), 2, MPFR_RNDN);
    return m.to_double();
}

bool Interval::contains(const mpq_class& x) const {
    return mpfr_cmp_q(lo_.raw(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.raw(), x.get_mpq_t()) >= 0;
}

Interval Interval::widened(double r) const {
    if (r < 0) throw DomainViolation("widened: negative radius");
    BigFloat lo(precision()), hi(precision());
    mpfr_sub_d(lo.raw(), lo_.raw(), r, MPFR_RNDD);
    mpfr_add_d(hi.raw(), hi_.raw(), r, MPFR_RNDU);
    return { std::move(lo), std::move(hi) };
}

Interval Interval::operator-() const {
    BigFloat lo(precision()), hi(precision());
    mpfr_neg(lo.raw(), hi_.raw(), MPFR_RNDD);
    mpfr_neg(hi.raw(), lo_.raw(), MPFR_RNDU);
    return { std::move(lo), std::move(hi) };
}

namespace {

mpfr_prec_t join_prec(const Interval& a, const Interval& b) {
    return std::max(a.precision(), b.precision());
}

} // namespace

Interval operator+(const Interval& a, const Interval& b) {
    mpfr_prec_t p = join_prec(a, b);
    BigFloat lo(p), hi(p);
    mpfr_add(lo.raw(), a.lo().raw(), b.lo().raw(), MPFR_RNDD);
    mpfr_add(hi.raw(), a.hi().raw(), b.hi().raw(), MPFR_RNDU);
    return { std::move(lo), std::move(hi) };
}

Interval operator-(const Interval& a, const Interval& b) {
    mpfr_prec_t p = join_prec(a, b);
    BigFloat lo(p), hi(p);
    mpfr_sub(lo.raw(), a.lo().raw(), b.hi().raw(), MPFR_RNDD);
    mpfr_sub(hi.raw(), a.hi().raw(), b.lo().raw(), MPFR_RNDU);
    return { std::move(lo), std::move(hi) };
}

Interval operator*(const Interval& a, const Interval& b) {
    mpfr_prec_t p = join_prec(a, b);
    // lo = min of the four products rounded down, hi = max rounded up.
    mpfr_srcptr as[2] = { a.lo().raw(), a.hi().raw() };
    mpfr_srcptr bs[2] = { b.lo().raw(), b.hi().raw() };
    BigFloat lo(p), hi(p), t(p);
    bool first = true;
    for (auto* x : as) {
        for (auto* y : bs) {
            mpfr_mul(t.raw(), x, y, MPFR_RNDD);
            if (first || t.cmp(lo) < 0) { mpfr_set(lo.raw(), t.raw(), MPFR_RNDD); }
            mpfr_mul(t.raw(), x, y, MPFR_RNDU);
            if (first || t.cmp(hi) > 0) { mpfr_set(hi.raw(), t.raw(), MPFR_RNDU); }
            first = false;
        }
    }
    return { std::move(lo), std::move(hi) };
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainViolation("interval division by enclosure of zero");
    mpfr_prec_t p = join_prec(a, b);
    mpfr_srcptr as[2] = { a.lo().raw(), a.hi().raw() };
    mpfr_srcptr bs[2] = { b.lo().raw(), b.hi().raw() };
    BigFloat lo(p), hi(p), t(p);
    bool first = true;
    for (auto* x : as) {
        for (auto* y : bs) {
            mpfr_div(t.raw(), x, y, MPFR_RNDD);
            if (first || t.cmp(lo) < 0) { mpfr_set(lo.raw(), t.raw(), MPFR_RNDD); }
            mpfr_div(t.raw(), x, y, MPFR_RNDU);
            if (first || t.cmp(hi) > 0) { mpfr_set(hi.raw(), t.raw(), MPFR_RNDU); }
            first = false;
        }
    }
    return { std::move(lo), std::move(hi) };
}

Interval abs(const Interval& x) {
    mpfr_prec_t p = x.precision();
    if (x.lo().sign() >= 0) return x;
    if (x.hi().sign() <= 0) return -x;
    BigFloat lo(p), hi(p), t(p);
    mpfr_set_zero(lo.raw(), 1);
    mpfr_neg(t.raw(), x.lo().raw(), MPFR_RNDU);
    if (t.cmp(x.hi()) > 0)
        mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
    else
        mpfr_set(hi.raw(), x.hi().raw(), MPFR_RNDU);
    return { std::move(lo), std::move(hi) };
}

Interval sqrt(const Interval& x) {
    if (x.lo().sign() < 0) throw DomainViolation("sqrt: negative enclosure endpoint");
    mpfr_prec_t p = x.precision();
    BigFloat lo(p), hi(p);
    mpfr_sqrt(lo.raw(), x.lo().raw(), MPFR_RNDD);
    mpfr_sqrt(hi.raw(), x.hi().raw(), MPFR_RNDU);
    return { std::move(lo), std::move(hi) };
}

Interval cbrt(const Interval& x) {
    mpfr_prec_t p = x.precision();
    BigFloat lo(p), hi(p);
    mpfr_cbrt(lo.raw(), x.lo().raw(), MPFR_RNDD);
    mpfr_cbrt(hi.raw(), x.hi().raw(), MPFR_RNDU);
    return { std::move(lo), std::move(hi) };
}

Interval sqr(const Interval& x) {
    mpfr_prec_t p = x.precision();
    BigFloat lo(p), hi(p);
    if (x.lo().sign() >= 0) {
        mpfr_sqr(lo.raw(), x.lo().raw(), MPFR_RNDD);
        mpfr_sqr(hi.raw(), x.hi().raw(), MPFR_RNDU);
    } else if (x.hi().sign() <= 0) {
        mpfr_sqr(lo.raw(), x.hi().raw(), MPFR_RNDD);
        mpfr_sqr(hi.raw(), x.lo().raw(), MPFR_RNDU);
    } else {
        mpfr_set_zero(lo.raw(), 1);
        BigFloat t(p);
        mpfr_sqr(t.raw(), x.lo().raw(), MPFR_RNDU);
        mpfr_sqr(hi.raw(), x.hi().raw(), MPFR_RNDU);
        if (t.cmp(hi) > 0) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
    }
    return { std::move(lo), std::move(hi) };
}

namespace {

// True if [x.lo, x.hi] may contain a point congruent to `offset_num/2 * pi`
// modulo 2*pi, judged conservatively through an outward-rounded translate of
// x into multiples of 2*pi. False positives only widen results.
bool may_contain_congruent(const Interval& x, int offset_half_pis) {
    mpfr_prec_t p = x.precision() + 8;
    Interval pi2 = Interval::pi(p) * Interval::point_long(2, p);
    Interval off = Interval::pi(p) * Interval::point_long(offset_half_pis, p)
                   / Interval::point_long(2, p);
    Interval t = (x - off) / pi2;
    mpz_class fl = t.hi().floor_integer();
    mpz_class cl = t.lo().ceil_integer();
    return fl >= cl;
}

} // namespace

Interval sin(const Interval& x) {
    mpfr_prec_t p = x.precision();
    BigFloat lo(p), hi(p), t(p);
    mpfr_sin(lo.raw(), x.lo().raw(), MPFR_RNDD);
    mpfr_sin(t.raw(), x.hi().raw(), MPFR_RNDD);
    if (t.cmp(lo) < 0) mpfr_set(lo.raw(), t.raw(), MPFR_RNDD);
    mpfr_sin(hi.raw(), x.lo().raw(), MPFR_RNDU);
    mpfr_sin(t.raw(), x.hi().raw(), MPFR_RNDU);
    if (t.cmp(hi) > 0) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
    if (may_contain_congruent(x, 1)) mpfr_set_si(hi.raw(), 1, MPFR_RNDU);   // max at pi/2 mod 2pi
    if (may_contain_congruent(x, -1)) mpfr_set_si(lo.raw(), -1, MPFR_RNDD); // min at -pi/2 mod 2pi
    return { std::move(lo), std::move(hi) };
}

Interval cos(const Interval& x) {
    mpfr_prec_t p = x.precision();
    BigFloat lo(p), hi(p), t(p);
    mpfr_cos(lo.raw(), x.lo().raw(), MPFR_RNDD);
    mpfr_cos(t.raw(), x.hi().raw(), MPFR_RNDD);
    if (t.cmp(lo) < 0) mpfr_set(lo.raw(), t.raw(), MPFR_RNDD);
    mpfr_cos(hi.raw(), x.lo().raw(), MPFR_RNDU);
    mpfr_cos(t.raw(), x.hi().raw(), MPFR_RNDU);
    if (t.cmp(hi) > 0) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
    if (may_contain_congruent(x, 0)) mpfr_set_si(hi.raw(), 1, MPFR_RNDU);   // max at 0 mod 2pi
    if (may_contain_congruent(x, 2)) mpfr_set_si(lo.raw(), -1, MPFR_RNDD);  // min at pi mod 2pi
    return { std::move(lo), std::move(hi) };
}

Interval tan(const Interval& x) {
    if (may_contain_congruent(x, 1) || may_contain_congruent(x, -1))
        throw PoleInEnclosure();
    // within one branch tan is increasing
    mpfr_prec_t p = x.precision();
    BigFloat lo(p), hi(p);
    mpfr_tan(lo.raw(), x.lo().raw(), MPFR_RNDD);
    mpfr_tan(hi.raw(), x.hi().raw(), MPFR_RNDU);
    return { std::move(lo), std::move(hi) };
}

Interval atan(const Interval& x) {
    mpfr_prec_t p = x.precision();
    BigFloat lo(p), hi(p);
    mpfr_atan(lo.raw(), x.lo().raw(), MPFR_RNDD);
    mpfr_atan(hi.raw(), x.hi().raw(), MPFR_RNDU);
    return { std::move(lo), std::move(hi) };
}

Verdict certify_less(const Interval& a, const Interval& b) {
    if (a.hi().cmp(b.lo()) < 0) return Verdict::certified_true;
    if (a.lo().cmp(b.hi()) >= 0) return Verdict::certified_false;
    return Verdict::unknown;
}

double separation_margin(const Interval& lhs, const Interval& rhs) {
    BigFloat m(std::max(lhs.precision(), rhs.precision()));
    mpfr_sub(m.raw(), rhs.lo().raw(), lhs.hi().raw(), MPFR_RNDN);
    return m.to_double();
}

} // namespace ballcert
