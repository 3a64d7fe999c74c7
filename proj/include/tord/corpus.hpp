#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tord/phimod.hpp"

namespace tord {

enum class Normalization { Homological, Cohomological };

/// One-dimensional module of the n-th cyclotomic power: phi = p^-n with its
/// Hodge jump at -n (homological); the cohomological variant is the dual.
FilteredPhiNModule cyclotomic(long n, Normalization norm, long prime = 3);

/// Two-dimensional module of a modular eigenform with Frobenius eigenvalues
/// lambda, mu. The cohomological module has phi = diag(lambda, mu) on
/// (e_lambda, e_mu), Fil^0 = all, Fil^{k-1} = span(hodge_line) and, with
/// monodromy, N(e_mu) = e_lambda. The homological module is its dual.
struct ModularFormParams {
    long k = 2;
    Scalar lambda;
    Scalar mu;
    bool monodromy = false;
    Normalization norm = Normalization::Cohomological;
    /// In (e_lambda, e_mu) coordinates, always cohomological.
    std::vector<Scalar> hodge_line;
    /// Reject data that is not weakly admissible (NOT_ADMISSIBLE).
    bool require_admissible = true;
};

/// Throws ValidationError with codes NOT_DISTINCT, EIGENVALUE_SUM,
/// VALUATION_ORDER, MONODROMY_GAP, HODGE_LINE, WEIGHT, NOT_ADMISSIBLE.
FilteredPhiNModule modular_form(const ModularFormParams& params);

enum class HodgePosition { Generic, ContainsSlope0 };

/// Homological modules of abelian varieties with prescribed slopes (p = 3):
///  1: slopes -1, -2/3, -1/3, 0 over e = 3;
///  2: slopes -1, -1/2, -1/2, 0, split over e = 2 or with an irreducible
///     slope -1/2 block over e = 1;
///  3: slopes -1 (x3), -1/2 (x2), 0 (x3) with phi irreducible on each
///     pure-slope part.
/// Fil^-1 = all, Fil^0 = H of half dimension. H is fixed per position and
/// checked for weak admissibility at construction.
FilteredPhiNModule abelian_scenario(int id, HodgePosition position, bool block_split = true);

/// phi = diag(1, 1/p) on (e_0, e_-1), N(e_0) = e_-1, Fil^0 = all, Fil^1 = 0.
FilteredPhiNModule counterexample_bad(long prime = 3);

struct CorpusEntry {
    std::string name;
    FilteredPhiNModule module;
    /// Partial report the classifier must reproduce.
    nlohmann::ordered_json expected;
    /// Provenance of the expectations and any divergence notes.
    nlohmann::ordered_json annotations;
};

/// Names of the shipped entries. corpus_entry also accepts
/// "cyclotomic:n=<int>:hom|coh" for any integer n.
std::vector<std::string> corpus_names();
/// Throws Error(Parameter) listing the available names when unknown.
CorpusEntry corpus_entry(const std::string& name);

}  // namespace tord
