#include "subpareto/rational.hpp"

#include "subpareto/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

namespace subpareto {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

mpz_class pow10(unsigned long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
    return p;
}

// floor(log10(a/b)) for positive a, b.
long floor_log10(const mpz_class& a, const mpz_class& b) {
    // start from a bit-length estimate, then correct by comparison
    long est = static_cast<long>(
        (static_cast<double>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
         static_cast<double>(mpz_sizeinbase(b.get_mpz_t(), 2))) *
        0.30102999566398119);
    auto cmp_pow = [&](long e) {
        // sign of a/b - 10^e
        if (e >= 0) return cmp(a, b * pow10(static_cast<unsigned long>(e)));
        return cmp(a * pow10(static_cast<unsigned long>(-e)), b);
    };
    while (cmp_pow(est) < 0) --est;
    while (cmp_pow(est + 1) >= 0) ++est;
    return est;
}

// round N/D to the nearest integer, ties to even; N, D > 0
mpz_class div_round_half_even(const mpz_class& N, const mpz_class& D) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), N.get_mpz_t(), D.get_mpz_t());
    int c = cmp(r * 2, D);
    if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    return q;
}

} // namespace

mpq_class parse_rational(const std::string& text) {
    std::string s = text;
    // trim
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw input_error("empty rational literal");
    s = s.substr(b, e - b + 1);

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s = s.substr(1);
    }

    mpq_class result;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw input_error("bad rational literal: '" + text + "'");
        mpz_class num_z(num), den_z(den);
        if (den_z == 0) throw input_error("zero denominator: '" + text + "'");
        mpq_class q(num_z, den_z);
        q.canonicalize();
        result = q;
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (fp.empty()) fp = "0";
        if (!all_digits(ip) || !all_digits(fp))
            throw input_error("bad decimal literal: '" + text + "'");
        mpz_class scale = pow10(fp.size());
        mpq_class q(mpz_class(ip) * scale + mpz_class(fp), scale);
        q.canonicalize();
        result = q;
    } else {
        if (!all_digits(s)) throw input_error("bad number literal: '" + text + "'");
        result = mpq_class(mpz_class(s));
    }
    if (negative) result = -result;
    return result;
}

double rational_to_double(const mpq_class& value) {
    int sign = sgn(value);
    if (sign == 0) return 0.0;
    mpz_class a = abs(value.get_num());
    mpz_class b = value.get_den();

    // Scale so the integer quotient has exactly 54 bits, round the low bit
    // away with the remainder as sticky.
    long la = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
    long lb = static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
    long shift = 54 - (la - lb);

    mpz_class q, r;
    auto divide = [&](long sh) {
        mpz_class A = a, B = b;
        if (sh >= 0)
            mpz_mul_2exp(A.get_mpz_t(), A.get_mpz_t(), static_cast<unsigned long>(sh));
        else
            mpz_mul_2exp(B.get_mpz_t(), B.get_mpz_t(), static_cast<unsigned long>(-sh));
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    };
    divide(shift);
    while (mpz_sizeinbase(q.get_mpz_t(), 2) < 54) divide(++shift);
    while (mpz_sizeinbase(q.get_mpz_t(), 2) > 54) divide(--shift);

    bool low = mpz_odd_p(q.get_mpz_t());
    mpz_class mant = q >> 1;
    if (low && (r != 0 || mpz_odd_p(mant.get_mpz_t()))) mant += 1;

    // mant <= 2^53 fits an unsigned long and converts to double exactly
    double d = std::ldexp(static_cast<double>(mant.get_ui()), static_cast<int>(1 - shift));
    return sign < 0 ? -d : d;
}

int decimal_exact_digits(const mpq_class& value) {
    mpz_class d = value.get_den();
    int twos = 0, fives = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++twos;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
        ++fives;
    }
    if (d != 1) return -1;
    return twos > fives ? twos : fives;
}

std::string rational_decimal(const mpq_class& value, int significant_digits) {
    if (significant_digits < 1) throw input_error("significant_digits must be >= 1");
    if (sgn(value) == 0) return "0";

    mpz_class a = abs(value.get_num());
    mpz_class b = value.get_den();
    long e = floor_log10(a, b);
    long p = significant_digits - 1 - e;

    mpz_class digits;
    if (p >= 0)
        digits = div_round_half_even(a * pow10(static_cast<unsigned long>(p)), b);
    else
        digits = div_round_half_even(a, b * pow10(static_cast<unsigned long>(-p)));
    std::string ds = digits.get_str();
    if (static_cast<int>(ds.size()) > significant_digits) {
        // rounded up to the next power of ten
        ds.pop_back();
        ++e;
    }

    std::string out;
    if (e >= significant_digits || e < -4) {
        // scientific
        out = ds.substr(0, 1);
        std::string frac = ds.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::string(e >= 0 ? "+" : "-") + std::to_string(e >= 0 ? e : -e);
    } else if (e >= 0) {
        out = ds.substr(0, e + 1);
        std::string frac = ds.substr(e + 1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    } else {
        std::string frac(static_cast<size_t>(-e - 1), '0');
        frac += ds;
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        out = "0";
        if (!frac.empty()) out += "." + frac;
    }
    return sgn(value) < 0 ? "-" + out : out;
}

} // namespace subpareto
