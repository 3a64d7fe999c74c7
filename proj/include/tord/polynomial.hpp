#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tord/rational.hpp"
#include "tord/scalar.hpp"

namespace tord {

/// Univariate polynomial over the coefficient field, lowest degree first.
/// The coefficient list never ends in a zero; the zero polynomial is empty.
class Polynomial {
public:
    explicit Polynomial(FieldSpec field) : field_(field) {}
    Polynomial(FieldSpec field, std::vector<Scalar> coeffs);

    static Polynomial constant(const Scalar& c);
    /// X - root.
    static Polynomial linear(const Scalar& root);
    /// prod (X - r_i).
    static Polynomial from_roots(FieldSpec field, std::span<const Scalar> roots);

    const FieldSpec& field() const noexcept { return field_; }
    const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }
    Scalar coeff(std::size_t i) const;
    Scalar evaluate(const Scalar& x) const;

    Polynomial monic() const;
    Polynomial pow(unsigned n) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    /// Euclidean division; divisor must be nonzero.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

    std::string to_string() const;

private:
    void trim();

    FieldSpec field_;
    std::vector<Scalar> coeffs_;
};

/// Monic gcd (zero only if both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);

struct SlopeEntry {
    Rational slope;
    long multiplicity = 0;

    bool operator==(const SlopeEntry&) const = default;
};

/// Slopes with multiplicity, strictly increasing by slope.
class SlopeMultiset {
public:
    SlopeMultiset() = default;
    explicit SlopeMultiset(std::vector<SlopeEntry> entries);

    const std::vector<SlopeEntry>& entries() const noexcept { return entries_; }
    long total_multiplicity() const;
    /// sum of slope * multiplicity.
    Rational weighted_sum() const;
    bool contains(const Rational& slope) const;
    /// True when every slope equals `slope` (vacuously for the empty multiset).
    bool is_pure(const Rational& slope) const;

    SlopeMultiset merged(const SlopeMultiset& other) const;
    SlopeMultiset negated() const;
    SlopeMultiset shifted(const Rational& delta) const;

    bool operator==(const SlopeMultiset&) const = default;

    std::string to_string() const;

private:
    std::vector<SlopeEntry> entries_;
};

/// Valuations of the roots of a monic polynomial with nonzero constant term,
/// read off the lower convex hull of the points (i, v(a_i)).
SlopeMultiset newton_slopes(const Polynomial& f);

}  // namespace tord
