#include "tord/subspace.hpp"

#include "tord/error.hpp"

namespace tord {

Subspace::Subspace(const MatrixE& generators) : Subspace(reduced_echelon(generators)) {}

Subspace Subspace::zero(FieldSpec field, std::size_t ambient) {
    return Subspace(MatrixE(field, 0, ambient), {});
}

Subspace Subspace::full(FieldSpec field, std::size_t ambient) {
    std::vector<std::size_t> piv(ambient);
    for (std::size_t i = 0; i < ambient; ++i) piv[i] = i;
    return Subspace(MatrixE::identity(field, ambient), std::move(piv));
}

Subspace Subspace::coordinate(FieldSpec field, std::size_t ambient, const std::vector<std::size_t>& indices) {
    MatrixE gens(field, indices.size(), ambient);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        if (indices[r] >= ambient) throw Error(ErrorCode::DimensionMismatch, "coordinate index out of range");
        gens(r, indices[r]) = Scalar::one(field);
    }
    return Subspace(gens);
}

std::vector<std::size_t> Subspace::non_pivots() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient_dim(); ++c) {
        if (k < pivots_.size() && pivots_[k] == c) ++k;
        else out.push_back(c);
    }
    return out;
}

std::vector<Scalar> Subspace::reduce(std::span<const Scalar> v) const {
    if (v.size() != ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "vector length does not match subspace");
    std::vector<Scalar> w(v.begin(), v.end());
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        const Scalar c = w[pivots_[r]];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= c * basis_(r, j);
    }
    return w;
}

std::vector<Scalar> Subspace::coordinates(std::span<const Scalar> v) const {
    std::vector<Scalar> out;
    out.reserve(pivots_.size());
    for (auto p : pivots_) out.push_back(v[p]);
    return out;
}

bool Subspace::contains(std::span<const Scalar> v) const {
    for (const auto& x : reduce(v))
        if (!x.is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim() != ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "subspaces of different ambient spaces");
    if (other.dim() > dim()) return false;
    for (std::size_t r = 0; r < other.dim(); ++r)
        if (!contains(other.basis_.row(r))) return false;
    return true;
}

Subspace Subspace::image(const MatrixE& m) const {
    if (!m.is_square() || m.rows() != ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "operator does not act on the ambient space");
    MatrixE gens(field(), dim(), ambient_dim());
    for (std::size_t r = 0; r < dim(); ++r) {
        const auto w = m.apply(basis_.row(r));
        for (std::size_t j = 0; j < w.size(); ++j) gens(r, j) = w[j];
    }
    return Subspace(gens);
}

Subspace Subspace::annihilator() const { return Subspace(kernel(basis_)); }

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.ambient_dim() <=> b.ambient_dim(); c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    if (auto c = a.pivots_ <=> b.pivots_; c != 0) return c;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t j = 0; j < a.ambient_dim(); ++j)
            if (auto c = a.basis_(r, j) <=> b.basis_(r, j); c != 0) return c;
    return std::strong_ordering::equal;
}

std::string Subspace::to_string() const { return "span" + basis_.to_string(); }

Subspace echelonize(const MatrixE& m) { return Subspace(m); }

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "subspaces of different ambient spaces");
}

MatrixE stack(const MatrixE& a, const MatrixE& b) {
    MatrixE out(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
    return out;
}

}  // namespace

Subspace sum(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    return Subspace(stack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    if (a.is_zero() || b.is_zero()) return Subspace::zero(a.field(), a.ambient_dim());
    // x A = y B  <=>  (x, -y) [A; B] = 0: the left kernel of the stacked bases.
    const MatrixE stacked = stack(a.basis(), b.basis());
    const MatrixE left = kernel(stacked.transpose());
    MatrixE gens(a.field(), left.rows(), a.ambient_dim());
    for (std::size_t k = 0; k < left.rows(); ++k)
        for (std::size_t r = 0; r < a.dim(); ++r) {
            const Scalar& c = left(k, r);
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < a.ambient_dim(); ++j) gens(k, j) += c * a.basis()(r, j);
        }
    return Subspace(gens);
}

bool is_invariant(const Subspace& s, const MatrixE& m) {
    if (!m.is_square() || m.rows() != s.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "operator does not act on the ambient space");
    for (std::size_t r = 0; r < s.dim(); ++r)
        if (!s.contains(m.apply(s.basis().row(r)))) return false;
    return true;
}

InducedMaps induced_maps(const Subspace& s, const MatrixE& m) {
    if (!is_invariant(s, m)) throw Error(ErrorCode::NotInvariant, "subspace is not invariant under the operator");
    const FieldSpec field = m.field();
    const std::size_t k = s.dim();
    MatrixE restriction(field, k, k);
    for (std::size_t c = 0; c < k; ++c) {
        const auto image = m.apply(s.basis().row(c));
        const auto coords = s.coordinates(image);
        for (std::size_t r = 0; r < k; ++r) restriction(r, c) = coords[r];
    }
    const auto comp = s.non_pivots();
    MatrixE quotient(field, comp.size(), comp.size());
    for (std::size_t c = 0; c < comp.size(); ++c) {
        const auto reduced = s.reduce(m.column(comp[c]));
        for (std::size_t r = 0; r < comp.size(); ++r) quotient(r, c) = reduced[comp[r]];
    }
    return {std::move(restriction), std::move(quotient)};
}

Flag::Flag(std::vector<Subspace> chain) : chain_(std::move(chain)) {
    if (chain_.size() < 1) throw Error(ErrorCode::InvalidFiltration, "flag needs at least one member");
    if (!chain_.front().is_full()) throw Error(ErrorCode::InvalidFiltration, "flag must start at the ambient space");
    if (!chain_.back().is_zero()) throw Error(ErrorCode::InvalidFiltration, "flag must end at zero");
    for (std::size_t i = 0; i + 1 < chain_.size(); ++i)
        if (chain_[i + 1].dim() >= chain_[i].dim() || !chain_[i].contains(chain_[i + 1]))
            throw Error(ErrorCode::InvalidFiltration, "flag members must be strictly decreasing");
}

}  // namespace tord
