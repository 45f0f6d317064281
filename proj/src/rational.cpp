#include "bcb/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace bcb {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// 10^k as an mpz inside a Rat denominator.
Rat pow10(unsigned k) {
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, k);
    return Rat(mpz_class(1), d);
}

}  // namespace

std::optional<Rat> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool neg = false;
    size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') {
        neg = text[0] == '-';
        pos = 1;
    }
    std::string_view body = text.substr(pos);
    if (body.empty()) return std::nullopt;

    auto slash = body.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = body.substr(0, slash);
        std::string_view den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        Rat q(mpz_class(std::string(num)), mpz_class(std::string(den)));
        if (q.get_den() == 0) return std::nullopt;
        q.canonicalize();
        return neg ? Rat(-q) : q;
    }

    // Decimal with optional exponent: digits[.digits][e[+-]digits]
    std::string_view mantissa = body;
    long exp10 = 0;
    auto epos = body.find_first_of("eE");
    if (epos != std::string_view::npos) {
        mantissa = body.substr(0, epos);
        std::string_view es = body.substr(epos + 1);
        bool eneg = false;
        if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
            eneg = es[0] == '-';
            es = es.substr(1);
        }
        if (!all_digits(es)) return std::nullopt;
        exp10 = std::strtol(std::string(es).c_str(), nullptr, 10);
        if (eneg) exp10 = -exp10;
    }

    std::string digits;
    long frac_digits = 0;
    auto dot = mantissa.find('.');
    if (dot != std::string_view::npos) {
        std::string_view ip = mantissa.substr(0, dot);
        std::string_view fp = mantissa.substr(dot + 1);
        if (ip.empty() && fp.empty()) return std::nullopt;
        if (!ip.empty() && !all_digits(ip)) return std::nullopt;
        if (!fp.empty() && !all_digits(fp)) return std::nullopt;
        digits = std::string(ip) + std::string(fp);
        frac_digits = static_cast<long>(fp.size());
    } else {
        if (!all_digits(mantissa)) return std::nullopt;
        digits = std::string(mantissa);
    }
    if (digits.empty()) return std::nullopt;

    Rat q(mpz_class(digits));
    long net = exp10 - frac_digits;
    if (net > 0) {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), 10, static_cast<unsigned>(net));
        q *= Rat(m);
    } else if (net < 0) {
        q *= pow10(static_cast<unsigned>(-net));
    }
    q.canonicalize();
    return neg ? Rat(-q) : q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace bcb
