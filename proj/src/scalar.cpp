#include "tord/scalar.hpp"

#include <cctype>
#include <utility>

#include "tord/error.hpp"

namespace tord {

std::string FieldSpec::describe() const {
    return "Q[u]/(u^" + std::to_string(ramification) + " - " + std::to_string(prime) + ")";
}

namespace {

// Dense polynomials over Q in u, lowest degree first, no trailing zeros.
using QPoly = std::vector<Rational>;

void trim(QPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

QPoly sub_scaled_shifted(QPoly a, const QPoly& b, const Rational& c, std::size_t shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
    return a;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

// Polynomial division a = q*b + r over Q.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    QPoly q;
    trim(a);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Rational c = a.back() / b.back();
        if (q.size() < shift + 1) q.resize(shift + 1);
        q[shift] = c;
        a = sub_scaled_shifted(std::move(a), b, c, shift);
    }
    trim(q);
    return {q, a};
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly out = a;
    if (out.size() < b.size()) out.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

class LiteralParser {
public:
    LiteralParser(std::string_view text, FieldSpec field) : field_(field) {
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) src_.push_back(ch);
    }

    Scalar parse() {
        if (src_.empty()) fail("empty literal");
        // A sign is allowed in front of the first term only.
        bool negative = false;
        if (peek('+') || peek('-')) {
            negative = src_[pos_] == '-';
            ++pos_;
        }
        Scalar total = term();
        if (negative) total = -total;
        while (pos_ < src_.size()) {
            const char op = src_[pos_];
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            ++pos_;
            Scalar t = term();
            if (op == '+') total += t; else total -= t;
        }
        return total;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorCode::Syntax,
                    "scalar literal '" + src_ + "': " + why + " at offset " + std::to_string(pos_));
    }

    bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }

    Scalar term() {
        Scalar value;
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            value = Scalar(field_, rational());
            if (peek('*')) {
                ++pos_;
                value *= atom();
            }
        } else if (peek('u') || peek('p')) {
            value = atom();
        } else {
            fail("expected a rational, 'u^k' or 'p^k'");
        }
        return value;
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return src_.substr(start, pos_ - start);
    }

    Rational rational() {
        std::string text = digits();
        if (peek('/')) {
            ++pos_;
            text += '/';
            text += digits();
        }
        return Rational::from_string(text);
    }

    long exponent() {
        bool negative = false;
        if (peek('-') || peek('+')) {
            negative = src_[pos_] == '-';
            ++pos_;
        }
        const std::string d = digits();
        if (d.size() > 9) fail("exponent too large");
        const long k = std::stol(d);
        return negative ? -k : k;
    }

    Scalar atom() {
        if (!peek('u') && !peek('p')) fail("expected 'u^k' or 'p^k'");
        const char base = src_[pos_++];
        long k = 1;
        if (peek('^')) {
            ++pos_;
            k = exponent();
        }
        if (base == 'u') return Scalar::uniformizer_power(field_, k);
        return Scalar(field_, Rational::prime_power(field_.prime, k));
    }

    FieldSpec field_;
    std::string src_;
    std::size_t pos_ = 0;
};

}  // namespace

Scalar::Scalar(FieldSpec field) : field_(field) {
    if (field.ramification < 1) throw Error(ErrorCode::Parameter, "ramification must be >= 1");
    if (field.prime < 2) throw Error(ErrorCode::Parameter, "prime must be >= 2");
    coeffs_.assign(static_cast<std::size_t>(field.ramification), Rational(0));
}

Scalar::Scalar(FieldSpec field, const Rational& value) : Scalar(field) { coeffs_[0] = value; }

Scalar::Scalar(FieldSpec field, std::vector<Rational> coeffs) : Scalar(field) {
    // Reduce an arbitrary-length u-polynomial through u^e = p.
    const auto e = static_cast<std::size_t>(field.ramification);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        coeffs_[i % e] += coeffs[i] * Rational::prime_power(field.prime, static_cast<long>(i / e));
    }
}

Scalar Scalar::uniformizer_power(FieldSpec field, long k) {
    const long e = field.ramification;
    long q = k / e;
    long r = k % e;
    if (r < 0) {
        r += e;
        q -= 1;
    }
    Scalar s(field);
    s.coeffs_[static_cast<std::size_t>(r)] = Rational::prime_power(field.prime, q);
    return s;
}

Scalar Scalar::parse(std::string_view text, FieldSpec field) {
    return LiteralParser(text, field).parse();
}

bool Scalar::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

bool Scalar::is_one() const {
    if (coeffs_.empty() || coeffs_[0] != Rational(1)) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return false;
    return true;
}

bool Scalar::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return false;
    return true;
}

Valuation Scalar::valuation() const {
    Valuation best;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        const Rational v = Rational(coeffs_[i].p_adic_valuation(field_.prime)) +
                           Rational(static_cast<long>(i), field_.ramification);
        if (!best || v < *best) best = v;
    }
    return best;
}

void Scalar::require_same_field(const Scalar& o) const {
    if (!(field_ == o.field_))
        throw Error(ErrorCode::FieldMismatch,
                    "scalars from " + field_.describe() + " and " + o.field_.describe());
}

Scalar Scalar::operator-() const {
    Scalar out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    require_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    require_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    require_same_field(o);
    const std::size_t e = coeffs_.size();
    std::vector<Rational> prod(2 * e - 1);
    for (std::size_t i = 0; i < e; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < e; ++j) prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    *this = Scalar(field_, std::move(prod));
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero scalar");
    // Extended Euclid on (u^e - p, b): track s with s*b = r (mod u^e - p).
    QPoly modulus(static_cast<std::size_t>(field_.ramification) + 1);
    modulus.front() = Rational(-field_.prime);
    modulus.back() = Rational(1);
    QPoly b = coeffs_;
    trim(b);

    QPoly r0 = modulus, r1 = b;
    QPoly s0, s1{Rational(1)};
    while (r1.size() > 1) {
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant because u^e - p is irreducible.
    const Rational c = r1.front();
    for (auto& x : s1) x /= c;
    return Scalar(field_, s1);
}

Scalar& Scalar::operator/=(const Scalar& o) {
    require_same_field(o);
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "scalar division by zero");
    return *this *= o.inverse();
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() <=> b.coeffs_.size();
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        const auto c = a.coeffs_[i] <=> b.coeffs_[i];
        if (c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string Scalar::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Rational& c = coeffs_[i];
        if (c.is_zero()) continue;
        std::string term;
        if (i == 0) {
            term = c.to_string();
        } else {
            const std::string atom = "u^" + std::to_string(i);
            if (c == Rational(1)) term = atom;
            else if (c == Rational(-1)) term = "-" + atom;
            else term = c.to_string() + "*" + atom;
        }
        if (!out.empty() && term.front() != '-') out += '+';
        out += term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace tord
