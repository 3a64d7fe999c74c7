#include "tord/rational.hpp"

#include <cctype>

#include "tord/error.hpp"

namespace tord {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Syntax: return "SYNTAX";
        case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
        case ErrorCode::FieldMismatch: return "FIELD_MISMATCH";
        case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
        case ErrorCode::NotInvariant: return "NOT_INVARIANT";
        case ErrorCode::NotMonic: return "NOT_MONIC";
        case ErrorCode::ZeroConstantTerm: return "ZERO_CONSTANT_TERM";
        case ErrorCode::Validation: return "VALIDATION";
        case ErrorCode::EnumInfeasible: return "ENUM_INFEASIBLE";
        case ErrorCode::InvalidFiltration: return "INVALID_FILTRATION";
        case ErrorCode::Parameter: return "PARAMETER";
        case ErrorCode::Io: return "IO";
    }
    return "UNKNOWN";
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
    std::string out = "module validation failed:";
    for (const auto& v : violations) {
        out += ' ';
        out += v.code;
        out += " (" + v.message + ")";
    }
    return out;
}

bool is_integer_literal(std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorCode::Validation, summarize(violations)), violations_(std::move(violations)) {}

Rational::Rational(long num, long den) : q_(mpz_class(num), mpz_class(den)) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    q_.canonicalize();
}

Rational Rational::from_string(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_integer_literal(num, true))
        throw Error(ErrorCode::Syntax, "malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) {
        const auto den = text.substr(slash + 1);
        if (!is_integer_literal(den, false))
            throw Error(ErrorCode::Syntax, "malformed rational '" + std::string(text) + "'");
        d = mpz_class(std::string(den), 10);
        if (d == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    }
    return Rational(mpq_class(n, d));
}

Rational Rational::prime_power(long p, long n) {
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(n < 0 ? -n : n));
    if (n >= 0) return Rational(mpq_class(pow));
    return Rational(mpq_class(mpz_class(1), pow));
}

long Rational::p_adic_valuation(long p) const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "valuation of zero rational");
    const mpz_class prime(p);
    mpz_class tmp;
    const long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q_.get_num_mpz_t(), prime.get_mpz_t()));
    const long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q_.get_den_mpz_t(), prime.get_mpz_t()));
    return vn - vd;
}

Rational& Rational::operator+=(const Rational& o) { q_ += o.q_; return *this; }
Rational& Rational::operator-=(const Rational& o) { q_ -= o.q_; return *this; }
Rational& Rational::operator*=(const Rational& o) { q_ *= o.q_; return *this; }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rational::to_string() const { return q_.get_str(10); }

}  // namespace tord
