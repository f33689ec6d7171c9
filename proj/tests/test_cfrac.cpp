#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ballcert/continued_fraction.hpp"
#include "ballcert/rotation.hpp"

#include <random>

using namespace ballcert;

namespace {

std::vector<BigInt> to_digits(std::initializer_list<long> xs) {
    std::vector<BigInt> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

QuadraticSurd random_surd(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> pd(-60, 60);
    std::uniform_int_distribution<long> dd(2, 9999);
    std::uniform_int_distribution<long> qd(1, 80);
    for (;;) {
        long d = dd(rng);
        if (is_perfect_square(BigInt(d))) continue;
        return QuadraticSurd::normalize(pd(rng), d, qd(rng));
    }
}

} // namespace

TEST_CASE("surd expansions match the worked examples") {
    ContinuedFraction g0 = expand_surd(QuadraticSurd::normalize(4, 2, 14));
    REQUIRE(g0.tail.kind == TailDescriptor::Kind::periodic);
    CHECK(g0.tail.preperiod_len == 4);
    CHECK(std::vector<BigInt>(g0.digits.begin(), g0.digits.begin() + 4) ==
          to_digits({ 0, 2, 1, 1 }));
    CHECK(g0.tail.period == to_digits({ 2 }));

    ContinuedFraction g1 = expand_surd(QuadraticSurd::normalize(40, 2, 94));
    CHECK(g1.tail.preperiod_len == 4);
    CHECK(std::vector<BigInt>(g1.digits.begin(), g1.digits.begin() + 4) ==
          to_digits({ 0, 2, 3, 1 }));
    CHECK(g1.tail.period == to_digits({ 2 }));

    ContinuedFraction r2 = expand_surd(QuadraticSurd::normalize(0, 2, 1));
    CHECK(r2.tail.preperiod_len == 1);
    CHECK(r2.digits[0] == 1);
    CHECK(r2.tail.period == to_digits({ 2 }));
}

TEST_CASE("preperiod plus period reconstruct the value exactly") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        QuadraticSurd s = random_surd(rng);
        ContinuedFraction cf = expand_surd(s);
        std::vector<BigInt> pre(cf.digits.begin(), cf.digits.begin() + cf.tail.preperiod_len);
        QuadraticNumber rebuilt = periodic_value(pre, cf.tail.period);
        CHECK(compare(rebuilt, s.value()) == 0);
    }
}

TEST_CASE("streaming expansion agrees with the exact one") {
    std::mt19937_64 rng(4242);
    PrecisionPolicy policy{ 128, 1 << 14 };
    for (int i = 0; i < 100; ++i) {
        QuadraticSurd s = random_surd(rng);
        ContinuedFraction exact = expand_surd(s);
        StreamExpansion stream = expand_stream(
            [&](mpfr_prec_t p) { return s.enclosure(p); }, 50, policy);
        REQUIRE(stream.digits.size() == 50);
        for (size_t j = 0; j < 50; ++j) CHECK(stream.digits[j] == exact.digit(j));
    }
}

TEST_CASE("streaming a dyadic rational terminates with a flag") {
    PrecisionPolicy policy{ 64, 512 };
    StreamExpansion s = expand_stream(
        [](mpfr_prec_t p) { return Interval::of_rational(BigRational(1, 2), p); }, 10, policy);
    CHECK(s.digits == to_digits({ 0, 2 }));
    CHECK(s.rational_terminated);
}

TEST_CASE("streaming the area-backed rotation number") {
    BigRational area = parse_decimal("81.5849");
    StreamExpansion s = expand_stream(gamma_enclosure_from_area(area), 8, { 128, 4096 });
    REQUIRE(s.digits.size() >= 4);
    CHECK(std::vector<BigInt>(s.digits.begin(), s.digits.begin() + 4) == to_digits({ 0, 2, 1, 1 }));
}

TEST_CASE("convergents of the worked examples") {
    ContinuedFraction g0 = expand_surd(QuadraticSurd::normalize(4, 2, 14));
    ConvergentTable t = convergents(g0, 5);
    CHECK(t.q(2) == 3);
    CHECK(t.q(3) == 5);
    CHECK(t.q(4) == 13);
    CHECK(t.q(5) == 31);
    CHECK(t.q_tilde(2) == 2);
    CHECK(t.q_tilde(3) == 3);
    CHECK(t.q_tilde(4) == 7);
    CHECK(t.q_tilde(5) == 16);

    ContinuedFraction g1 = expand_surd(QuadraticSurd::normalize(40, 2, 94));
    ConvergentTable t1 = convergents(g1, 3);
    CHECK(t1.q(2) == 7);
    CHECK(t1.q(3) == 9);
    CHECK(t1.q_tilde(3) == 5);

    // gcd(p_j, q_j) = 1 along the table
    for (const auto& row : t.rows()) CHECK(gcd(row.p, row.q) == 1);
}

TEST_CASE("parity pattern check") {
    ContinuedFraction g0 = expand_surd(QuadraticSurd::normalize(4, 2, 14));
    CHECK(parity_check(g0).verdict == Verdict::certified_true);

    ContinuedFraction g1 = expand_surd(QuadraticSurd::normalize(40, 2, 94));
    CHECK(parity_check(g1).verdict == Verdict::certified_true);

    // a_3 even refutes the pattern
    ContinuedFraction bad;
    bad.digits = to_digits({ 0, 2, 1, 2, 2 });
    bad.tail = TailDescriptor::periodic(4, to_digits({ 2 }));
    ParityReport rep = parity_check(bad);
    CHECK(rep.verdict == Verdict::certified_false);
    CHECK(rep.detail == "a_3 is even");

    // (6+sqrt2)/20 = [0,2,1,2,...] fails the same clause
    ContinuedFraction gb = expand_surd(QuadraticSurd::normalize(6, 2, 20));
    CHECK(parity_check(gb).verdict == Verdict::certified_false);

    // open tails can refute but never confirm
    ContinuedFraction open;
    open.digits = to_digits({ 0, 2, 1, 1, 2, 2 });
    open.tail = TailDescriptor::unknown_tail(6);
    CHECK(parity_check(open).verdict == Verdict::unknown);
}

TEST_CASE("parity implies odd denominators") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> digit_pick(0, 2);
    const long even_digits[] = { 2, 4, 6 };
    for (int i = 0; i < 25; ++i) {
        std::vector<BigInt> pre = to_digits({ 0, 2, 1, 3 });
        for (int j = 0; j < 4; ++j) pre.emplace_back(even_digits[digit_pick(rng)]);
        std::vector<BigInt> period = to_digits({ even_digits[digit_pick(rng)] });
        ContinuedFraction cf;
        cf.digits = pre;
        cf.digits.insert(cf.digits.end(), period.begin(), period.end());
        cf.tail = TailDescriptor::periodic(pre.size(), period);
        REQUIRE(parity_check(cf).verdict == Verdict::certified_true);
        ConvergentTable t = convergents(cf, 20);
        for (size_t j = 2; j <= 20; ++j) CHECK(mpz_odd_p(t.q(j).get_mpz_t()));
    }
}

TEST_CASE("convergent inequalities for the first example") {
    QuadraticSurd g0 = QuadraticSurd::normalize(4, 2, 14);
    ContinuedFraction cf = expand_surd(g0);
    ConvergentTable t = convergents(cf, 13);
    DiophantineReport rep = diophantine_bounds_check(cf, t, g0, 12, 6);
    CHECK(rep.all_ok());

    // spec-level spot values: 1/9 < |3 g0 - 1| < 1/5
    QuadraticNumber err2 =
        (QuadraticNumber(BigRational(3)) * g0.value() - QuadraticNumber(BigRational(1))).abs();
    CHECK(err2 > QuadraticNumber(BigRational(1, 9)));
    CHECK(err2 < QuadraticNumber(BigRational(1, 5)));
    CHECK(err2 > QuadraticNumber(parse_decimal("0.1601886204")));
    CHECK(err2 < QuadraticNumber(parse_decimal("0.1601886206")));

    // |5 g0 - 2| ~ 0.0663523, the best approximation among q <= 5
    QuadraticNumber err3 =
        (QuadraticNumber(BigRational(5)) * g0.value() - QuadraticNumber(BigRational(2))).abs();
    CHECK(err3 > QuadraticNumber(parse_decimal("0.0663522991")));
    CHECK(err3 < QuadraticNumber(parse_decimal("0.0663522992")));

    // q_j >= 2^{(j-1)/2}: 3 >= sqrt2, 5 >= 2, 13 >= 2 sqrt2, 31 >= 4
    CHECK(t.q(2) * t.q(2) >= 2);
    CHECK(t.q(3) * t.q(3) >= 4);
    CHECK(t.q(4) * t.q(4) >= 8);
    CHECK(t.q(5) * t.q(5) >= 16);
}

TEST_CASE("convergents alternate and improve") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
        QuadraticSurd s = random_surd(rng);
        ContinuedFraction cf = expand_surd(s);
        ConvergentTable t = convergents(cf, 10);
        QuadraticNumber g = s.value();
        int prev_sign = 0;
        QuadraticNumber prev_err;
        for (size_t j = 0; j <= 10; ++j) {
            QuadraticNumber approx(BigRational(t.p(j), t.q(j)));
            QuadraticNumber diff = approx - g;
            int sign = diff.sign();
            REQUIRE(sign != 0);
            if (j > 0) {
                CHECK(sign == -prev_sign);
                CHECK(diff.abs() < prev_err);
            }
            prev_sign = sign;
            prev_err = diff.abs();
        }
    }
}
