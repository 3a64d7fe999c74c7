#pragma once

#include <compare>
#include <string>
#include <vector>

#include "tord/matrix.hpp"

namespace tord {

/// A subspace of E^n stored by its reduced row echelon basis, so equal
/// subspaces always have identical representations.
class Subspace {
public:
    /// Row space of `generators` (which must have `ambient` columns).
    explicit Subspace(const MatrixE& generators);

    static Subspace zero(FieldSpec field, std::size_t ambient);
    static Subspace full(FieldSpec field, std::size_t ambient);
    /// Span of the standard basis vectors e_i, i in `indices`.
    static Subspace coordinate(FieldSpec field, std::size_t ambient, const std::vector<std::size_t>& indices);

    const FieldSpec& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const MatrixE& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    /// Columns that are not pivots; they index the quotient coordinates.
    std::vector<std::size_t> non_pivots() const;

    bool is_zero() const noexcept { return dim() == 0; }
    bool is_full() const noexcept { return dim() == ambient_dim(); }
    bool contains(std::span<const Scalar> v) const;
    bool contains(const Subspace& other) const;

    /// v minus its component along the echelon basis; zero iff v lies in the subspace.
    std::vector<Scalar> reduce(std::span<const Scalar> v) const;
    /// Coordinates of a member vector in the echelon basis (its entries at the pivots).
    std::vector<Scalar> coordinates(std::span<const Scalar> v) const;

    /// Image under v -> M v (M square of ambient size).
    Subspace image(const MatrixE& m) const;
    /// {f : f(v) = 0 for all v} as a subspace of the dual coordinates.
    Subspace annihilator() const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    /// Canonical order: ambient dimension, dimension, pivot columns, then entries lexicographically.
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

    std::string to_string() const;

private:
    Subspace(MatrixE basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}
    explicit Subspace(EchelonForm&& ech) : Subspace(std::move(ech.matrix), std::move(ech.pivots)) {}

    MatrixE basis_;
    std::vector<std::size_t> pivots_;
};

Subspace echelonize(const MatrixE& m);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// True iff M v lies in S for every v in S.
bool is_invariant(const Subspace& s, const MatrixE& m);

struct InducedMaps {
    MatrixE restriction;  // on S, in its echelon basis
    MatrixE quotient;     // on ambient / S, in the non-pivot coordinates
};

/// Restriction and quotient of M along an M-invariant subspace S.
InducedMaps induced_maps(const Subspace& s, const MatrixE& m);

/// Strictly decreasing chain from the ambient space down to zero.
class Flag {
public:
    explicit Flag(std::vector<Subspace> chain);

    const std::vector<Subspace>& chain() const noexcept { return chain_; }
    /// Number of strict inclusions (chain size minus one).
    std::size_t length() const noexcept { return chain_.size() - 1; }
    bool is_complete() const noexcept { return length() == chain_.front().ambient_dim(); }

    bool operator==(const Flag&) const = default;

private:
    std::vector<Subspace> chain_;
};

}  // namespace tord
