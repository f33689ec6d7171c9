#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ballcert/interval.hpp"
#include "ballcert/quadratic.hpp"
#include "ballcert/rational.hpp"

#include <random>

using namespace ballcert;

namespace {

// the interval must overlap [digits/10^scale, (digits+1)/10^scale]; with a
// tight interval this pins the leading digits of the enclosed constant
bool encloses_decimal(const Interval& iv, const char* digits, unsigned long scale) {
    BigInt scale_z;
    mpz_ui_pow_ui(scale_z.get_mpz_t(), 10, scale);
    BigRational lo(BigInt(digits), scale_z);
    lo.canonicalize();
    BigRational hi = lo + BigRational(1, scale_z);
    return mpfr_cmp_q(iv.hi().raw(), lo.get_mpq_t()) >= 0 &&
           mpfr_cmp_q(iv.lo().raw(), hi.get_mpq_t()) <= 0;
}

} // namespace

TEST_CASE("decimal parsing is exact") {
    CHECK(parse_decimal("81.5849") == BigRational(815849, 10000));
    CHECK(parse_decimal("-0.25") == BigRational(-1, 4));
    CHECK(parse_decimal("3") == BigRational(3));
    CHECK(parse_decimal("1.2e3") == BigRational(1200));
    CHECK(parse_decimal("25e-2") == BigRational(1, 4));
    CHECK_THROWS_AS(parse_decimal("abc"), InputError);
    CHECK_THROWS_AS(parse_decimal(""), InputError);
    CHECK_THROWS_AS(parse_decimal("1.2.3"), InputError);
}

TEST_CASE("surd normalization") {
    QuadraticSurd g0 = QuadraticSurd::normalize(4, 2, 14);
    CHECK(g0.p() == 4);
    CHECK(g0.d() == 2);
    CHECK(g0.q() == 14); // 14 | 2 - 16, already canonical

    QuadraticSurd r2 = QuadraticSurd::normalize(0, 2, 1);
    CHECK(r2.p() == 0);
    CHECK(r2.d() == 2);
    CHECK(r2.q() == 1);

    CHECK_THROWS_AS(QuadraticSurd::normalize(1, 4, 2), PerfectSquare);
    CHECK_THROWS_AS(QuadraticSurd::normalize(1, 2, 0), ZeroDenominator);

    // scaling restores the divisibility invariant without changing the value
    QuadraticSurd s = QuadraticSurd::normalize(1, 2, 3);
    CHECK((s.d() - s.p() * s.p()) % s.q() == 0);
    CHECK(compare(s.value(), QuadraticNumber(1, 1, 3, 2)) == 0);

    // (6+sqrt(2))/20 needs the scale-up; the triple stays value-faithful
    QuadraticSurd t = QuadraticSurd::normalize(6, 2, 20);
    CHECK((t.d() - t.p() * t.p()) % t.q() == 0);
    CHECK(compare(t.value(), QuadraticNumber(6, 1, 20, 2)) == 0);
}

TEST_CASE("exact surd comparison") {
    QuadraticSurd g0 = QuadraticSurd::normalize(4, 2, 14);
    QuadraticSurd g1 = QuadraticSurd::normalize(40, 2, 94);

    CHECK(g0.cmp(BigRational(1, 2)) < 0);
    CHECK(g0.cmp(g0) == 0);
    CHECK(g1.cmp(g0) > 0);

    // 30-digit decimal oracle brackets
    BigRational g0_lo = parse_decimal("0.386729540169506789200120623157");
    BigRational g0_hi = parse_decimal("0.386729540169506789200120623159");
    CHECK(g0.value().cmp(QuadraticNumber(g0_lo)) > 0);
    CHECK(g0.value().cmp(QuadraticNumber(g0_hi)) < 0);

    BigRational g1_lo = parse_decimal("0.440576740025245692008528603448");
    BigRational g1_hi = parse_decimal("0.440576740025245692008528603450");
    CHECK(g1.value().cmp(QuadraticNumber(g1_lo)) > 0);
    CHECK(g1.value().cmp(QuadraticNumber(g1_hi)) < 0);
}

TEST_CASE("quadratic field arithmetic") {
    QuadraticNumber a(1, 1, 2, 2);  // (1+sqrt2)/2
    QuadraticNumber b(3, -1, 5, 2); // (3-sqrt2)/5
    QuadraticNumber sum = a + b;
    QuadraticNumber prod = a * b;
    // (1+sqrt2)/2 + (3-sqrt2)/5 = (11+3 sqrt2)/10
    CHECK(compare(sum, QuadraticNumber(11, 3, 10, 2)) == 0);
    // (1+sqrt2)(3-sqrt2)/10 = (1+2 sqrt2)/10
    CHECK(compare(prod, QuadraticNumber(1, 2, 10, 2)) == 0);
    CHECK(compare(a / a, QuadraticNumber(BigRational(1))) == 0);
    CHECK(compare((a - a), QuadraticNumber()) == 0);

    // floor of (4+sqrt2)/14 is 0; floor of 14/(4+sqrt2) = 14(4-sqrt2)/14 is 2
    QuadraticNumber g0(4, 1, 14, 2);
    CHECK(g0.floor_() == 0);
    CHECK((QuadraticNumber(1) / g0).floor_() == 2);
    CHECK((-g0).floor_() == -1);
    CHECK(g0.nearest_integer() == 0);

    // perfect-square radicand demotes to a rational
    QuadraticNumber demoted(1, 1, 2, 4); // (1 + 2)/2
    CHECK(demoted.is_rational());
    CHECK(demoted.as_rational() == BigRational(3, 2));
}

TEST_CASE("interval constants and functions") {
    Interval pi = Interval::pi(128);
    CHECK(encloses_decimal(pi, "31415926535897932384", 19));
    CHECK(pi.width_double() < 1e-30);

    // arctan(1) = pi/4 at 64 bits, width below 2^-60
    Interval at1 = atan(Interval::point_long(1, 64));
    Interval quarter_pi = Interval::pi(128) / Interval::point_long(4, 128);
    CHECK(at1.lo().cmp(quarter_pi.hi()) <= 0);
    CHECK(at1.hi().cmp(quarter_pi.lo()) >= 0);
    CHECK(at1.width_double() < std::pow(2.0, -60));

    Interval c0 = cos(Interval::point_long(0, 64));
    CHECK(c0.contains(BigRational(1)));
    CHECK(c0.width_double() < 1e-15);

    // sqrt(2) encloses the exact surd
    Interval r2 = sqrt(Interval::point_long(2, 128));
    QuadraticSurd surd2 = QuadraticSurd::normalize(0, 2, 1);
    Interval exact = surd2.enclosure(256);
    CHECK(r2.lo().cmp(exact.hi()) <= 0);
    CHECK(r2.hi().cmp(exact.lo()) >= 0);
    CHECK(encloses_decimal(r2, "14142135623730950488", 19));

    CHECK_THROWS_AS(sqrt(Interval::point_long(-1, 64)), DomainViolation);
    CHECK_THROWS_AS(tan(Interval::pi(64) / Interval::point_long(2, 64)), PoleInEnclosure);
}

TEST_CASE("interval enclosures of surds") {
    QuadraticSurd g0 = QuadraticSurd::normalize(4, 2, 14);
    CHECK(encloses_decimal(g0.enclosure(64), "3867295401695067892", 19));
    QuadraticSurd r2 = QuadraticSurd::normalize(0, 2, 1);
    CHECK(encloses_decimal(r2.enclosure(64), "14142135623730950488", 19));
    QuadraticSurd g1 = QuadraticSurd::normalize(40, 2, 94);
    CHECK(encloses_decimal(g1.enclosure(64), "4405767400252456920", 19));
}

TEST_CASE("enclosure soundness on random rational points") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<long> num(-999, 999);
    std::uniform_int_distribution<long> den(1, 999);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        BigRational x(num(rng), den(rng));
        x.canonicalize();
        Interval coarse = Interval::of_rational(x, 64);
        Interval fine = Interval::of_rational(x, 256);
        struct Fn {
            const char* name;
            Interval (*f)(const Interval&);
            bool (*ok)(const BigRational&);
        };
        static const Fn fns[] = {
            { "sqrt", [](const Interval& v) { return ballcert::sqrt(v); },
              [](const BigRational& v) { return v >= 0; } },
            { "sin", [](const Interval& v) { return ballcert::sin(v); },
              [](const BigRational&) { return true; } },
            { "cos", [](const Interval& v) { return ballcert::cos(v); },
              [](const BigRational&) { return true; } },
            { "tan", [](const Interval& v) { return ballcert::tan(v); },
              [](const BigRational& v) { return v > -1 && v < 1; } },
            { "atan", [](const Interval& v) { return ballcert::atan(v); },
              [](const BigRational&) { return true; } },
        };
        for (const auto& fn : fns) {
            if (!fn.ok(x)) continue;
            Interval lo_prec = fn.f(coarse);
            Interval hi_prec = fn.f(fine); // 4x precision carrier of the true value
            CHECK(lo_prec.lo().cmp(hi_prec.lo()) <= 0);
            CHECK(lo_prec.hi().cmp(hi_prec.hi()) >= 0);
            ++checked;
        }
    }
    CHECK(checked > 3000);
}

TEST_CASE("monotone refinement never widens") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(1, 500);
    for (int i = 0; i < 200; ++i) {
        BigRational x(num(rng), num(rng));
        mpfr_prec_t p = 64;
        Interval prev = ballcert::atan(ballcert::sqrt(Interval::of_rational(x, p)));
        for (int step = 0; step < 4; ++step) {
            p *= 2;
            Interval next = ballcert::atan(ballcert::sqrt(Interval::of_rational(x, p)));
            // refined enclosures stay inside the coarse one and overlap it
            CHECK(next.lo().cmp(prev.lo()) >= 0);
            CHECK(next.hi().cmp(prev.hi()) <= 0);
            CHECK(next.width().cmp(prev.width()) <= 0);
            prev = next;
        }
    }
}

TEST_CASE("surd comparison agrees with separated intervals") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> pd(-50, 50);
    std::uniform_int_distribution<long> dd(2, 300);
    std::uniform_int_distribution<long> qd(1, 60);
    int agreements = 0;
    for (int i = 0; i < 400; ++i) {
        long d = dd(rng);
        if (is_perfect_square(BigInt(d))) continue;
        QuadraticSurd a = QuadraticSurd::normalize(pd(rng), d, qd(rng));
        QuadraticSurd b = QuadraticSurd::normalize(pd(rng), d, qd(rng));
        Interval ia = a.enclosure(128), ib = b.enclosure(128);
        if (ia.hi().cmp(ib.lo()) < 0) {
            CHECK(a.cmp(b) < 0);
            ++agreements;
        } else if (ib.hi().cmp(ia.lo()) < 0) {
            CHECK(a.cmp(b) > 0);
            ++agreements;
        }
    }
    CHECK(agreements > 300);
}

TEST_CASE("cross-field comparison separates by refinement") {
    QuadraticNumber r2 = QuadraticNumber::sqrt_of(2);
    QuadraticNumber r3 = QuadraticNumber::sqrt_of(3);
    CHECK(compare(r2, r3) < 0);
    CHECK(compare(r3, r2) > 0);
    // sqrt(8)/2 = sqrt(2): equal across representations
    QuadraticNumber r8_half(0, 1, 2, 8);
    CHECK(compare(r8_half, r2) == 0);
}
