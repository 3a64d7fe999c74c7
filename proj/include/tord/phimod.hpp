#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tord/error.hpp"
#include "tord/matrix.hpp"
#include "tord/polynomial.hpp"
#include "tord/subspace.hpp"

namespace tord {

// ---------------------------------------------------------------------------
// Frobenius block structure

struct EigenBlock {
    Scalar value;
    bool operator==(const EigenBlock&) const = default;
};

/// Standard Jordan block: value on the diagonal, ones on the superdiagonal,
/// so the invariant subspaces are the spans of the leading basis vectors.
struct JordanBlock {
    Scalar value;
    std::size_t size = 0;
    bool operator==(const JordanBlock&) const = default;
};

/// Companion block of a monic polynomial the caller asserts to be
/// irreducible over the coefficient field.
struct IrreducibleBlock {
    Polynomial poly;
    bool operator==(const IrreducibleBlock&) const = default;
};

using Block = std::variant<EigenBlock, JordanBlock, IrreducibleBlock>;

std::size_t block_dim(const Block& b);
MatrixE block_matrix(const Block& b);
/// (X - value)^size for Eigen/Jordan blocks, the polynomial itself otherwise.
Polynomial block_charpoly(const Block& b);
std::string block_kind(const Block& b);

// ---------------------------------------------------------------------------
// Hodge filtration

/// Listed degree n with Fil^n = space. Listed degrees are exactly the jumps:
/// Fil^i equals the space of the smallest listed degree >= i, the ambient
/// space below the first degree, and zero above the last.
struct HodgeJump {
    long degree = 0;
    Subspace space;
    bool operator==(const HodgeJump&) const = default;
};

class HodgeData {
public:
    HodgeData(FieldSpec field, std::size_t ambient, std::vector<HodgeJump> jumps);

    const std::vector<HodgeJump>& jumps() const noexcept { return jumps_; }
    std::size_t ambient_dim() const noexcept { return ambient_; }

    Subspace fil(long i) const;
    /// Jump degree n with multiplicity dim Gr^n, ascending by degree.
    std::vector<std::pair<long, std::size_t>> graded_dims() const;

    bool operator==(const HodgeData&) const = default;

private:
    FieldSpec field_;
    std::size_t ambient_ = 0;
    std::vector<HodgeJump> jumps_;
};

/// Builds Hodge data from the filtration's values at a list of ascending
/// degrees, keeping only the degrees where it actually drops.
HodgeData hodge_from_values(FieldSpec field, std::size_t ambient,
                            const std::vector<std::pair<long, Subspace>>& values);

// ---------------------------------------------------------------------------
// Filtered (phi, N)-modules

/// Unvalidated module data, as read from a document.
struct RawModule {
    FieldSpec field;
    std::size_t dim = 0;
    std::vector<std::string> labels;             // empty: generated
    std::vector<Block> blocks;
    std::optional<MatrixE> monodromy;            // absent: zero
    std::vector<std::pair<long, MatrixE>> hodge; // degree -> spanning rows
};

class FilteredPhiNModule {
public:
    /// The zero-dimensional module (identity for direct_sum).
    static FilteredPhiNModule zero(FieldSpec field);

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return phi_.rows(); }
    const MatrixE& phi() const noexcept { return phi_; }
    const MatrixE& monodromy() const noexcept { return monodromy_; }
    const HodgeData& hodge() const noexcept { return hodge_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    /// Non-fatal observations made during validation.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Offset of each block's first coordinate.
    std::vector<std::size_t> block_offsets() const;

    bool operator==(const FilteredPhiNModule& o) const {
        return field_ == o.field_ && phi_ == o.phi_ && monodromy_ == o.monodromy_ &&
               hodge_ == o.hodge_ && blocks_ == o.blocks_ && labels_ == o.labels_;
    }

private:
    FilteredPhiNModule(FieldSpec field, MatrixE phi, MatrixE monodromy, HodgeData hodge,
                       std::vector<Block> blocks, std::vector<std::string> labels,
                       std::vector<std::string> warnings);

    friend FilteredPhiNModule validate_module(const RawModule& raw);
    friend FilteredPhiNModule assemble_unchecked(FieldSpec, std::vector<Block>, MatrixE, HodgeData,
                                                 std::vector<std::string>);

    FieldSpec field_;
    MatrixE phi_;
    MatrixE monodromy_;
    HodgeData hodge_;
    std::vector<Block> blocks_;
    std::vector<std::string> labels_;
    std::vector<std::string> warnings_;
};

/// Every broken invariant of the raw data (empty when valid).
std::vector<Violation> check_module(const RawModule& raw);
/// Throws ValidationError listing all violations.
FilteredPhiNModule validate_module(const RawModule& raw);
/// Builds a module from data already known to be consistent (internal
/// constructions: duals, twists, subquotients). Invariants are asserted.
FilteredPhiNModule assemble_unchecked(FieldSpec field, std::vector<Block> blocks, MatrixE monodromy,
                                      HodgeData hodge, std::vector<std::string> labels);

SlopeMultiset slopes(const FilteredPhiNModule& d);
/// Valuation of det(phi|S); S must be phi-stable.
Rational t_N(const FilteredPhiNModule& d, const Subspace& s);
/// sum_i i * dim Gr^i of the induced filtration Fil^i ∩ S.
Rational t_H(const FilteredPhiNModule& d, const Subspace& s);

bool is_crystalline(const FilteredPhiNModule& d);
/// Weight w with multiplicity dim Gr^{-w}, ascending.
std::vector<long> hodge_tate_weights(const FilteredPhiNModule& d);

struct ExecOptions {
    unsigned threads = 1;
};

struct AdmissibilityResult {
    bool admissible = false;
    /// First violating stable subspace in canonical order; the full space
    /// when the endpoints differ.
    std::optional<Subspace> witness;
};

/// Newton-above-Hodge on every (phi,N)-stable subspace plus equal endpoints.
/// Throws EnumInfeasible when the stable subspaces cannot be enumerated.
AdmissibilityResult is_weakly_admissible(const FilteredPhiNModule& d, ExecOptions opts = {});
/// Corresponds to a Galois representation; same criterion as weak admissibility.
inline bool is_etale(const FilteredPhiNModule& d, ExecOptions opts = {}) {
    return is_weakly_admissible(d, opts).admissible;
}

FilteredPhiNModule dual(const FilteredPhiNModule& d);
/// Tensor with the n-th power of the cyclotomic object: phi -> p^{-n} phi,
/// Hodge jumps shifted by -n.
FilteredPhiNModule twist(const FilteredPhiNModule& d, long n);
FilteredPhiNModule direct_sum(const FilteredPhiNModule& a, const FilteredPhiNModule& b);

/// The module induced on upper/lower for (phi,N)-stable coordinate subspaces
/// lower ⊆ upper compatible with the block structure.
FilteredPhiNModule subquotient(const FilteredPhiNModule& d, const Subspace& upper, const Subspace& lower);

}  // namespace tord
