#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tord/rational.hpp"

namespace tord {

/// Parameters of the coefficient field Q[u]/(u^e - p).
struct FieldSpec {
    long prime = 3;
    long ramification = 1;

    bool operator==(const FieldSpec&) const = default;

    /// Human-readable presentation, e.g. "Q[u]/(u^2 - 3)".
    std::string describe() const;
};

/// p-adic valuation, std::nullopt standing for +infinity.
using Valuation = std::optional<Rational>;

/// An element sum c_i u^i (0 <= i < e) of Q[u]/(u^e - p).
///
/// Since u^e - p is Eisenstein the quotient is a field, and the term
/// valuations v_p(c_i) + i/e have pairwise distinct fractional parts, so the
/// valuation of a sum is the minimum over its terms with no cancellation.
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(FieldSpec field);
    Scalar(FieldSpec field, const Rational& value);
    Scalar(FieldSpec field, std::vector<Rational> coeffs);

    static Scalar zero(FieldSpec field) { return Scalar(field); }
    static Scalar one(FieldSpec field) { return Scalar(field, Rational(1)); }
    /// u^k for any integer k, reduced through u^e = p.
    static Scalar uniformizer_power(FieldSpec field, long k);

    /// Parses the scalar literal grammar (see README).
    static Scalar parse(std::string_view text, FieldSpec field);

    const FieldSpec& field() const noexcept { return field_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    /// True when the element lies in Q (all u-coefficients vanish).
    bool is_rational() const;

    Valuation valuation() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const;

    /// Field parameters and coefficients both compared.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }
    /// Total order on coefficient vectors (lexicographic from c_0); used only
    /// to make enumeration order canonical.
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    /// Canonical literal, e.g. "3", "-1/3", "1/3*u^1", "2-u^2".
    std::string to_string() const;

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        return os << s.to_string();
    }

private:
    void require_same_field(const Scalar& o) const;

    FieldSpec field_{};
    std::vector<Rational> coeffs_;
};

}  // namespace tord
