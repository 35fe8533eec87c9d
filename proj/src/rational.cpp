#include "osa/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace osa {

Rat rat_from_decimal(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&]() -> void {
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    };

    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }

    std::string digits;
    long frac_len = 0;
    bool any_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        digits.push_back(text[pos++]);
        any_digit = true;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            digits.push_back(text[pos++]);
            ++frac_len;
            any_digit = true;
        }
    }
    if (!any_digit) fail();

    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        auto first = text.data() + pos;
        auto last = text.data() + text.size();
        auto res = std::from_chars(first, last, exponent);
        if (res.ec != std::errc{} || first == res.ptr) fail();
        pos += static_cast<std::size_t>(res.ptr - first);
    }
    if (pos != text.size()) fail();

    mpz_class numerator(digits.empty() ? "0" : digits, 10);
    if (negative) numerator = -numerator;

    // value = numerator * 10^(exponent - frac_len)
    long scale = exponent - frac_len;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rat result;
    if (scale >= 0) {
        result = Rat(numerator * pow10);
    } else {
        result = Rat(numerator, pow10);
    }
    result.canonicalize();
    return result;
}

Rat rat_from_decimal(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return rat_from_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

double to_double(const Rat& q) {
    // mpq_get_d truncates toward zero; nudge to the nearest double so that
    // decimal round-trips (0.45 -> 9/20 -> 0.45) stay exact.
    double d = q.get_d();
    if (q == 0 || !std::isfinite(d)) return d;
    double d_next = std::nextafter(d, q > 0 ? HUGE_VAL : -HUGE_VAL);
    Rat exact_d(d), exact_next(d_next);  // double -> mpq is exact
    Rat err_d = abs(q - exact_d), err_next = abs(q - exact_next);
    return err_next < err_d ? d_next : d;
}

i64 floor_to_i64(const Rat& q) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    if (!z.fits_slong_p()) throw std::overflow_error("rational too large for i64");
    return static_cast<i64>(z.get_si());
}

i64 ceil_to_i64(const Rat& q) {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    if (!z.fits_slong_p()) throw std::overflow_error("rational too large for i64");
    return static_cast<i64>(z.get_si());
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, static_cast<std::size_t>(res.ptr - buf));
}

}  // namespace osa
