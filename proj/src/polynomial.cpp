#include "tord/polynomial.hpp"

#include <algorithm>
#include <map>

#include "tord/error.hpp"

namespace tord {

Polynomial::Polynomial(FieldSpec field, std::vector<Scalar> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (!(c.field() == field_))
            throw Error(ErrorCode::FieldMismatch, "polynomial coefficient from another field");
    trim();
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const Scalar& c) { return Polynomial(c.field(), {c}); }

Polynomial Polynomial::linear(const Scalar& root) {
    return Polynomial(root.field(), {-root, Scalar::one(root.field())});
}

Polynomial Polynomial::from_roots(FieldSpec field, std::span<const Scalar> roots) {
    Polynomial f = constant(Scalar::one(field));
    for (const auto& r : roots) f = f * linear(r);
    return f;
}

Scalar Polynomial::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Scalar::zero(field_);
}

Scalar Polynomial::evaluate(const Scalar& x) const {
    Scalar acc = Scalar::zero(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::monic() const {
    if (coeffs_.empty()) return *this;
    const Scalar inv = coeffs_.back().inverse();
    std::vector<Scalar> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c * inv);
    return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial out = constant(Scalar::one(field_));
    for (unsigned i = 0; i < n; ++i) out = out * *this;
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar::zero(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Polynomial(a.field_, std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar::zero(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return Polynomial(a.field_, std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (!(a.field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
    if (a.is_zero() || b.is_zero()) return Polynomial(a.field_);
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar::zero(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(a.field_, std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    std::vector<Scalar> rem = coeffs_;
    const std::size_t db = divisor.coeffs_.size();
    if (rem.size() < db) return {Polynomial(field_), *this};
    std::vector<Scalar> quot(rem.size() - db + 1, Scalar::zero(field_));
    const Scalar lead_inv = divisor.coeffs_.back().inverse();
    for (std::size_t k = rem.size(); k-- >= db;) {
        const Scalar c = rem[k] * lead_inv;
        const std::size_t shift = k - (db - 1);
        quot[shift] = c;
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < db; ++j) rem[shift + j] -= c * divisor.coeffs_[j];
    }
    return {Polynomial(field_, std::move(quot)), Polynomial(field_, std::move(rem))};
}

std::string Polynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        const std::string c = "(" + coeffs_[i].to_string() + ")";
        if (i == 0) out += c;
        else out += (coeffs_[i].is_one() ? std::string() : c + "*") + "X^" + std::to_string(i);
    }
    return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

SlopeMultiset::SlopeMultiset(std::vector<SlopeEntry> entries) {
    std::map<Rational, long> acc;
    for (auto& e : entries)
        if (e.multiplicity > 0) acc[e.slope] += e.multiplicity;
    for (auto& [s, m] : acc) entries_.push_back({s, m});
}

long SlopeMultiset::total_multiplicity() const {
    long n = 0;
    for (const auto& e : entries_) n += e.multiplicity;
    return n;
}

Rational SlopeMultiset::weighted_sum() const {
    Rational sum(0);
    for (const auto& e : entries_) sum += e.slope * Rational(e.multiplicity);
    return sum;
}

bool SlopeMultiset::contains(const Rational& slope) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const SlopeEntry& e) { return e.slope == slope; });
}

bool SlopeMultiset::is_pure(const Rational& slope) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [&](const SlopeEntry& e) { return e.slope == slope; });
}

SlopeMultiset SlopeMultiset::merged(const SlopeMultiset& other) const {
    std::vector<SlopeEntry> all = entries_;
    all.insert(all.end(), other.entries_.begin(), other.entries_.end());
    return SlopeMultiset(std::move(all));
}

SlopeMultiset SlopeMultiset::negated() const {
    std::vector<SlopeEntry> out;
    for (const auto& e : entries_) out.push_back({-e.slope, e.multiplicity});
    return SlopeMultiset(std::move(out));
}

SlopeMultiset SlopeMultiset::shifted(const Rational& delta) const {
    std::vector<SlopeEntry> out;
    for (const auto& e : entries_) out.push_back({e.slope + delta, e.multiplicity});
    return SlopeMultiset(std::move(out));
}

std::string SlopeMultiset::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out += ", ";
        out += entries_[i].slope.to_string();
        if (entries_[i].multiplicity != 1) out += " x" + std::to_string(entries_[i].multiplicity);
    }
    return out + "}";
}

SlopeMultiset newton_slopes(const Polynomial& f) {
    if (!f.is_monic()) throw Error(ErrorCode::NotMonic, "newton_slopes needs a monic polynomial");
    if (f.coeffs().front().is_zero())
        throw Error(ErrorCode::ZeroConstantTerm, "newton_slopes needs a nonzero constant term");

    struct Point {
        long x;
        Rational y;
    };
    std::vector<Point> pts;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        auto v = f.coeffs()[i].valuation();
        if (v) pts.push_back({static_cast<long>(i), *v});
    }

    // Lower hull, monotone chain from left to right.
    std::vector<Point> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const Point& a = hull[hull.size() - 2];
            const Point& b = hull.back();
            // Drop b when it lies on or above segment a -> pt.
            const Rational cross = (b.y - a.y) * Rational(pt.x - a.x) - (pt.y - a.y) * Rational(b.x - a.x);
            if (cross >= Rational(0)) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }

    std::vector<SlopeEntry> out;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const long len = hull[k + 1].x - hull[k].x;
        out.push_back({(hull[k].y - hull[k + 1].y) / Rational(len), len});
    }
    return SlopeMultiset(std::move(out));
}

}  // namespace tord
