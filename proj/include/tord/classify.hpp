#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tord/phimod.hpp"

namespace tord {

// ---------------------------------------------------------------------------
// Enumeration

/// Every subspace stable under phi and N, sorted canonically. Built from the
/// per-block invariant lattices; throws EnumInfeasible when two blocks share
/// an eigenvalue, since the stable subspaces then form a continuous family.
std::vector<Subspace> stable_subspaces(const FilteredPhiNModule& d);

/// All chains full ⊋ ... ⊋ 0 of stable subspaces, depth first with children
/// in canonical order. max_length caps the number of inclusions.
std::vector<Flag> stable_flags(const FilteredPhiNModule& d, std::optional<std::size_t> max_length = std::nullopt,
                               ExecOptions opts = {});

/// Number of complete stable flags (refinements), counted without listing them.
std::size_t count_complete_flags(const FilteredPhiNModule& d);

struct TrianguineResult {
    bool value = false;
    std::size_t refinements = 0;
};
TrianguineResult is_trianguline(const FilteredPhiNModule& d);

// ---------------------------------------------------------------------------
// Triangulordinary filtrations

/// Flag W_0 = D ⊋ ... ⊋ W_r = 0 with weight weights[j] on W_j / W_{j+1}.
/// F^n is W_j for the smallest j with weights[j] >= n.
struct IndexedFiltration {
    Flag flag;
    std::vector<long> weights;

    bool operator==(const IndexedFiltration&) const = default;
};

/// The graded pieces W_j / W_{j+1} as modules.
std::vector<FilteredPhiNModule> gradeds(const FilteredPhiNModule& d, const Flag& flag);

/// Throws InvalidFiltration unless every graded is crystalline with Hodge
/// filtration concentrated in degree -weights[j] and weights increase.
void check_filtration(const FilteredPhiNModule& d, const IndexedFiltration& f);

std::vector<IndexedFiltration> triangulordinary_filtrations(const FilteredPhiNModule& d, ExecOptions opts = {});

bool is_ordinary(const FilteredPhiNModule& d, const IndexedFiltration& f);

struct SlopeHypothesis {
    bool holds = true;
    /// Weights of the gradeds carrying slope -1 at weight <= 0.
    std::vector<long> offending;
};
SlopeHypothesis slope_hypothesis(const FilteredPhiNModule& d, const IndexedFiltration& f);

struct FiltrationVerdict {
    IndexedFiltration filtration;
    std::vector<std::size_t> multiplicities;
    std::vector<SlopeMultiset> graded_slopes;
    bool is_ordinary = false;
    bool slope_hypothesis = false;
    bool theorem_applies = false;
    std::vector<long> offending_gradeds;
};
FiltrationVerdict judge(const FilteredPhiNModule& d, const IndexedFiltration& f);

/// phi - 1/p is injective on ker N.
bool bloch_kato_fg(const FilteredPhiNModule& d);

// ---------------------------------------------------------------------------
// Report

struct ClassifyOptions {
    unsigned threads = 1;
    /// Enumeration is refused above this dimension.
    std::size_t max_dim = 12;
};

/// Fields left empty are unknown because enumeration was refused or
/// infeasible; `complete` is false in that case and warnings say why.
struct ClassificationReport {
    FieldSpec field;
    std::size_t dimension = 0;
    SlopeMultiset slopes;
    std::vector<long> hodge_tate_weights;
    bool semistable = true;
    bool crystalline = false;
    bool plus_de_rham = false;
    bool bloch_kato_f_equals_g = false;
    std::optional<bool> weakly_admissible;
    std::optional<Subspace> admissibility_witness;
    std::optional<std::vector<FiltrationVerdict>> triangulordinary;
    std::optional<FiltrationVerdict> ordinary;
    std::optional<TrianguineResult> trianguline;
    std::vector<std::string> notes;
    std::vector<std::string> warnings;
    bool complete = true;
};

ClassificationReport classify(const FilteredPhiNModule& d, ClassifyOptions opts = {});

}  // namespace tord
