#include "ballcert/quadratic.hpp"

#include "ballcert/errors.hpp"

#include <sstream>

namespace ballcert {

QuadraticNumber::QuadraticNumber(const BigRational& r)
    : a_(r.get_num()), b_(0), c_(r.get_den()), d_(0) {}

QuadraticNumber::QuadraticNumber(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (c_ == 0) throw ZeroDenominator();
    if (d_ < 0) throw DomainViolation("negative radicand");
    normalize(true);
}

QuadraticNumber QuadraticNumber::sqrt_of(const BigInt& d) {
    return QuadraticNumber(0, 1, 1, d);
}

void QuadraticNumber::normalize(bool reduce_radical) {
    if (d_ == 0 || b_ == 0) {
        b_ = 0;
        d_ = 0;
    } else if (reduce_radical) {
        auto [s, r] = extract_square_part(d_);
        if (r == 1) {
            // rational after all: b*sqrt(d) = b*s
            a_ += b_ * s;
            b_ = 0;
            d_ = 0;
        } else {
            b_ *= s;
            d_ = r;
        }
    }
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    BigInt g = gcd(gcd(a_, b_), c_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

BigRational QuadraticNumber::as_rational() const {
    if (!is_rational()) throw DomainViolation("value is irrational");
    BigRational r(a_, c_);
    r.canonicalize();
    return r;
}

int QuadraticNumber::sign() const {
    // sign of a + b*sqrt(d)  (c > 0 does not affect it)
    if (b_ == 0) return sgn(a_);
    if (a_ == 0) return sgn(b_);
    int sa = sgn(a_), sb = sgn(b_);
    if (sa == sb) return sa;
    // opposite signs: compare a^2 against b^2*d
    BigInt lhs = a_ * a_;
    BigInt rhs = b_ * b_ * d_;
    if (lhs == rhs) return 0; // unreachable for non-square d
    // |a| dominates  ->  sign of a, else sign of b
    return lhs > rhs ? sa : sb;
}

QuadraticNumber QuadraticNumber::operator-() const {
    QuadraticNumber r(*this);
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

namespace {

const BigInt& join_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
    if (x.b() == 0) return y.d();
    if (y.b() == 0) return x.d();
    if (x.d() != y.d())
        throw DomainViolation("arithmetic across distinct quadratic fields");
    return x.d();
}

} // namespace

QuadraticNumber QuadraticNumber::operator+(const QuadraticNumber& o) const {
    BigInt d = join_radicand(*this, o);
    QuadraticNumber r;
    r.a_ = a_ * o.c_ + o.a_ * c_;
    r.b_ = b_ * o.c_ + o.b_ * c_;
    r.c_ = c_ * o.c_;
    r.d_ = d;
    r.normalize(false);
    return r;
}

QuadraticNumber QuadraticNumber::operator-(const QuadraticNumber& o) const {
    return *this + (-o);
}

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& o) const {
    BigInt d = join_radicand(*this, o);
    QuadraticNumber r;
    r.a_ = a_ * o.a_ + b_ * o.b_ * d;
    r.b_ = a_ * o.b_ + b_ * o.a_;
    r.c_ = c_ * o.c_;
    r.d_ = d;
    r.normalize(false);
    return r;
}

QuadraticNumber QuadraticNumber::operator/(const QuadraticNumber& o) const {
    if (o.is_zero()) throw DomainViolation("division by zero");
    BigInt d = join_radicand(*this, o);
    // 1/((a + b sqrt(d))/c) = c (a - b sqrt(d)) / (a^2 - b^2 d)
    BigInt norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
    QuadraticNumber inv;
    inv.a_ = o.c_ * o.a_;
    inv.b_ = -o.c_ * o.b_;
    inv.c_ = norm; // sign fixed by normalize
    inv.d_ = d;
    if (norm < 0) {
        inv.a_ = -inv.a_;
        inv.b_ = -inv.b_;
        inv.c_ = -norm;
    }
    inv.normalize(false);
    return *this * inv;
}

BigInt QuadraticNumber::floor_() const {
    if (b_ == 0) return floor_div(a_, c_);
    // floor(b*sqrt(d)) exactly via the integer square root
    BigInt b2d = b_ * b_ * d_;
    BigInt root = isqrt(b2d);
    BigInt m = (b_ > 0) ? root : -root - 1; // d non-square: strict between
    // (a + b sqrt(d))/c is irrational, so it lies strictly inside
    // (a + m, a + m + 1) and the floor of the quotient is exact.
    return floor_div(a_ + m, c_);
}

BigInt QuadraticNumber::nearest_integer() const {
    QuadraticNumber half(BigRational(1, 2));
    return (*this + half).floor_();
}

QuadraticNumber QuadraticNumber::frac() const {
    return *this - QuadraticNumber(BigRational(floor_()));
}

Interval QuadraticNumber::enclosure(mpfr_prec_t prec) const {
    Interval ia = Interval::of_integer(a_, prec);
    if (b_ == 0) return ia / Interval::of_integer(c_, prec);
    Interval rad = sqrt(Interval::of_integer(d_, prec));
    Interval num = ia + Interval::of_integer(b_, prec) * rad;
    return num / Interval::of_integer(c_, prec);
}

std::string QuadraticNumber::str() const {
    std::ostringstream os;
    if (b_ == 0) {
        os << a_;
        if (c_ != 1) os << "/" << c_;
        return os.str();
    }
    os << "(" << a_;
    if (b_ == 1)
        os << "+";
    else if (b_ == -1)
        os << "-";
    else
        os << (b_ > 0 ? "+" : "") << b_ << "*";
    os << "sqrt(" << d_ << "))";
    if (c_ != 1) os << "/" << c_;
    return os.str();
}

int compare(const QuadraticNumber& x, const QuadraticNumber& y) {
    if (x.b() == 0 || y.b() == 0 || x.d() == y.d()) return x.cmp(y);
    // distinct fields: decide equality algebraically first
    // x = y would force rational part equality and b_x^2 d_x = b_y^2 d_y
    QuadraticNumber rx(BigRational(x.a(), x.c()));
    QuadraticNumber ry(BigRational(y.a(), y.c()));
    BigRational bx(x.b(), x.c()), by(y.b(), y.c());
    bool equal = rx.cmp(ry) == 0 && sgn(x.b()) == sgn(y.b()) &&
                 bx * bx * BigRational(x.d()) == by * by * BigRational(y.d());
    if (equal) return 0;
    for (mpfr_prec_t p = 64; p <= (mpfr_prec_t(1) << 20); p *= 2) {
        Interval ix = x.enclosure(p), iy = y.enclosure(p);
        if (ix.hi().cmp(iy.lo()) < 0) return -1;
        if (iy.hi().cmp(ix.lo()) < 0) return 1;
    }
    throw PrecisionExhausted("cross-field comparison did not separate");
}

QuadraticSurd QuadraticSurd::normalize(const BigInt& p, const BigInt& d, const BigInt& q) {
    if (q == 0) throw ZeroDenominator();
    if (d < 0) throw InputError("surd radicand D must be non-negative");
    if (is_perfect_square(d)) {
        std::ostringstream os;
        os << "D = " << d << " is a perfect square; (" << p << "+sqrt(" << d << "))/" << q
           << " is the rational " << BigRational(p + isqrt(d), q);
        throw PerfectSquare(os.str());
    }
    // exact value, with the radical sign carried by the denominator's sign
    QuadraticNumber v = q > 0 ? QuadraticNumber(p, 1, q, d) : QuadraticNumber(-p, -1, -q, d);
    return from_value(v);
}

QuadraticSurd QuadraticSurd::from_value(const QuadraticNumber& v) {
    if (v.is_rational()) throw PerfectSquare("value is rational, not a quadratic surd");
    // (a + b sqrt(d0))/c  ->  (P + sqrt(D))/Q with the b's sign moved into Q
    BigInt P, D, Q;
    if (v.b() > 0) {
        P = v.a();
        D = v.b() * v.b() * v.d();
        Q = v.c();
    } else {
        P = -v.a();
        D = v.b() * v.b() * v.d();
        Q = -v.c();
    }
    // enforce Q | D - P^2 by scaling numerator and denominator by |Q|
    BigInt rem = (D - P * P) % Q;
    if (rem != 0) {
        BigInt absq = ::abs(Q);
        P *= absq;
        D *= absq * absq;
        Q *= absq;
    }
    return QuadraticSurd(std::move(P), std::move(D), std::move(Q), v);
}

QuadraticSurd QuadraticSurd::parse(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    BigInt vals[3];
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(is, tok, ',')) throw InputError("surd must be \"P,D,Q\": " + text);
        try {
            vals[i] = BigInt(tok);
        } catch (...) {
            throw InputError("bad integer '" + tok + "' in surd " + text);
        }
    }
    if (std::getline(is, tok, ',')) throw InputError("surd must have exactly three components");
    return normalize(vals[0], vals[1], vals[2]);
}

std::string QuadraticSurd::str() const {
    std::ostringstream os;
    os << "(" << p_ << "+sqrt(" << d_ << "))/" << q_;
    return os.str();
}

} // namespace ballcert
