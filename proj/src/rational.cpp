#include "ballcert/rational.hpp"

#include "ballcert/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace ballcert {

BigRational parse_decimal(const std::string& text) {
    if (text.empty()) throw InputError("empty decimal literal");
    size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    std::string int_part, frac_part;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) int_part += text[i++];
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) frac_part += text[i++];
    }
    long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        size_t pos = 0;
        try {
            exp10 = std::stol(text.substr(i), &pos);
        } catch (...) {
            throw InputError("bad exponent in decimal literal: " + text);
        }
        i += pos;
    }
    if (i != text.size() || (int_part.empty() && frac_part.empty()))
        throw InputError("malformed decimal literal: " + text);

    BigInt num(int_part.empty() ? std::string("0") : int_part);
    for (char c : frac_part) {
        num *= 10;
        num += c - '0';
    }
    BigInt den = 1;
    long shift = exp10 - static_cast<long>(frac_part.size());
    BigInt ten = 10;
    if (shift >= 0) {
        BigInt scale;
        mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift));
        num *= scale;
    } else {
        mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-shift));
    }
    if (neg) num = -num;
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt floor_rational(const BigRational& x) {
    return floor_div(x.get_num(), x.get_den());
}

BigInt nearest_integer(const BigRational& x) {
    // floor(x + 1/2)
    BigRational y = x + BigRational(1, 2);
    return floor_rational(y);
}

bool is_perfect_square(const BigInt& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

BigInt isqrt(const BigInt& n) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::pair<BigInt, BigInt> extract_square_part(const BigInt& n) {
    BigInt s = 1, r = n;
    if (r <= 0) return { s, r };
    if (is_perfect_square(r)) return { isqrt(r), BigInt(1) };
    // trial division; enough for the small radicands used as exact inputs
    const unsigned long bound = 1000000;
    for (unsigned long p = 2; p <= bound; p = (p == 2 ? 3 : p + 2)) {
        BigInt p2 = BigInt(p) * p;
        if (p2 > r) break;
        while (mpz_divisible_p(r.get_mpz_t(), p2.get_mpz_t())) {
            r /= p2;
            s *= p;
        }
        if (is_perfect_square(r)) {
            s *= isqrt(r);
            r = 1;
            break;
        }
    }
    return { s, r };
}

} // namespace ballcert
