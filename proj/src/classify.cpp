#include "tord/classify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>

#include "tord/parallel.hpp"

namespace tord {

namespace {

constexpr std::size_t kMaxSubspaces = std::size_t{1} << 20;
constexpr std::size_t kMaxFlags = 100000;

bool strictly_inside(const Subspace& inner, const Subspace& outer) {
    return inner.dim() < outer.dim() && outer.contains(inner);
}

}  // namespace

std::vector<Subspace> stable_subspaces(const FilteredPhiNModule& d) {
    const auto& blocks = d.blocks();
    const FieldSpec field = d.field();
    if (d.dim() == 0) return {Subspace::zero(field, 0)};

    std::vector<Polynomial> polys;
    for (const auto& b : blocks) polys.push_back(block_charpoly(b));
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            if (gcd(polys[i], polys[j]).degree() > 0)
                throw Error(ErrorCode::EnumInfeasible, "blocks " + std::to_string(i) + " and " + std::to_string(j) +
                                                           " share an eigenvalue; stable subspaces form a family");

    // Per block: the admissible numbers of leading coordinates.
    std::vector<std::vector<std::size_t>> options;
    std::size_t count = 1;
    for (const auto& b : blocks) {
        const std::size_t m = block_dim(b);
        std::vector<std::size_t> opt;
        if (std::holds_alternative<IrreducibleBlock>(b)) opt = {0, m};
        else
            for (std::size_t k = 0; k <= m; ++k) opt.push_back(k);
        count *= opt.size();
        if (count > kMaxSubspaces) throw Error(ErrorCode::EnumInfeasible, "too many phi-stable subspaces to enumerate");
        options.push_back(std::move(opt));
    }

    const auto offsets = d.block_offsets();
    const MatrixE& n = d.monodromy();
    std::vector<Subspace> out;
    std::vector<std::size_t> choice(blocks.size(), 0);
    while (true) {
        std::vector<char> in(d.dim(), 0);
        std::vector<std::size_t> coords;
        for (std::size_t k = 0; k < blocks.size(); ++k)
            for (std::size_t i = 0; i < options[k][choice[k]]; ++i) {
                in[offsets[k] + i] = 1;
                coords.push_back(offsets[k] + i);
            }
        bool stable = true;
        for (auto j : coords)
            for (std::size_t i = 0; i < d.dim() && stable; ++i)
                if (!in[i] && !n(i, j).is_zero()) stable = false;
        if (stable) out.push_back(Subspace::coordinate(field, d.dim(), coords));

        std::size_t k = 0;
        while (k < blocks.size() && ++choice[k] == options[k].size()) choice[k++] = 0;
        if (k == blocks.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Flag> stable_flags(const FilteredPhiNModule& d, std::optional<std::size_t> max_length, ExecOptions opts) {
    const auto subs = stable_subspaces(d);
    const std::size_t top = subs.size() - 1;  // the full space sorts last
    std::vector<std::vector<std::size_t>> children(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = 0; j < subs.size(); ++j)
            if (strictly_inside(subs[j], subs[i])) children[i].push_back(j);

    std::vector<Flag> out;
    if (subs.size() == 1) {
        out.emplace_back(std::vector<Subspace>{subs[0]});
        return out;
    }

    const auto& first = children[top];
    std::vector<std::vector<Flag>> slots(first.size());
    std::atomic<std::size_t> total{0};
    parallel_for(first.size(), opts.threads, [&](std::size_t slot) {
        std::vector<std::size_t> chain{top, first[slot]};
        std::function<void()> walk = [&] {
            const std::size_t last = chain.back();
            if (subs[last].is_zero()) {
                if (++total > kMaxFlags) throw Error(ErrorCode::EnumInfeasible, "too many stable flags to enumerate");
                std::vector<Subspace> members;
                for (auto idx : chain) members.push_back(subs[idx]);
                slots[slot].emplace_back(std::move(members));
                return;
            }
            if (max_length && chain.size() - 1 >= *max_length) return;
            for (auto c : children[last]) {
                chain.push_back(c);
                walk();
                chain.pop_back();
            }
        };
        walk();
    });
    for (auto& s : slots)
        for (auto& f : s) out.push_back(std::move(f));
    return out;
}

std::size_t count_complete_flags(const FilteredPhiNModule& d) {
    const auto subs = stable_subspaces(d);
    // subs is sorted by dimension first, so each entry only needs earlier ones.
    std::vector<std::size_t> ways(subs.size(), 0);
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i].is_zero()) {
            ways[i] = 1;
            continue;
        }
        for (std::size_t j = 0; j < i; ++j)
            if (subs[j].dim() + 1 == subs[i].dim() && subs[i].contains(subs[j])) ways[i] += ways[j];
    }
    return ways.back();
}

TrianguineResult is_trianguline(const FilteredPhiNModule& d) {
    const std::size_t n = count_complete_flags(d);
    return {n > 0, n};
}

std::vector<FilteredPhiNModule> gradeds(const FilteredPhiNModule& d, const Flag& flag) {
    std::vector<FilteredPhiNModule> out;
    const auto& chain = flag.chain();
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) out.push_back(subquotient(d, chain[j], chain[j + 1]));
    return out;
}

namespace {

bool graded_has_weight(const FilteredPhiNModule& g, long weight) {
    if (!g.monodromy().is_zero()) return false;
    const auto& jumps = g.hodge().jumps();
    return jumps.size() == 1 && jumps.front().degree == -weight;
}

}  // namespace

void check_filtration(const FilteredPhiNModule& d, const IndexedFiltration& f) {
    const auto& chain = f.flag.chain();
    if (chain.front().ambient_dim() != d.dim())
        throw Error(ErrorCode::InvalidFiltration, "filtration lives in another ambient space");
    if (f.weights.size() != f.flag.length())
        throw Error(ErrorCode::InvalidFiltration, "one weight per graded piece is required");
    for (std::size_t j = 0; j + 1 < f.weights.size(); ++j)
        if (f.weights[j] >= f.weights[j + 1])
            throw Error(ErrorCode::InvalidFiltration, "weights must strictly increase with depth");
    for (const auto& s : chain)
        if (!is_invariant(s, d.phi()) || !is_invariant(s, d.monodromy()))
            throw Error(ErrorCode::InvalidFiltration, "filtration member is not (phi,N)-stable");
    const auto gs = gradeds(d, f.flag);
    for (std::size_t j = 0; j < gs.size(); ++j)
        if (!graded_has_weight(gs[j], f.weights[j]))
            throw Error(ErrorCode::InvalidFiltration, "graded " + std::to_string(j) +
                                                          " is not crystalline of the single weight " +
                                                          std::to_string(f.weights[j]));
}

std::vector<IndexedFiltration> triangulordinary_filtrations(const FilteredPhiNModule& d, ExecOptions opts) {
    if (d.dim() == 0) return {};
    // The gradeds' weights, counted with dimension, must be exactly the
    // Hodge-Tate weights, and they strictly increase: both the weights and
    // the dimensions of the W_j are forced.
    std::vector<long> weights;
    std::vector<std::size_t> target_dims;
    {
        std::map<long, std::size_t> mult;
        for (long w : hodge_tate_weights(d)) ++mult[w];
        std::size_t remaining = d.dim();
        for (const auto& [w, m] : mult) {
            weights.push_back(w);
            target_dims.push_back(remaining);
            remaining -= m;
        }
        target_dims.push_back(0);
    }

    const auto subs = stable_subspaces(d);
    const Subspace& full = subs.back();
    auto candidates = [&](const Subspace& outer, std::size_t dim) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i].dim() == dim && outer.contains(subs[i])) out.push_back(i);
        return out;
    };

    const auto first = candidates(full, target_dims[1]);
    std::vector<std::vector<IndexedFiltration>> slots(first.size());
    parallel_for(first.size(), opts.threads, [&](std::size_t slot) {
        std::vector<Subspace> chain{full, subs[first[slot]]};
        if (!graded_has_weight(subquotient(d, chain[0], chain[1]), weights[0])) return;
        std::function<void()> walk = [&] {
            const std::size_t j = chain.size() - 1;
            if (j == weights.size()) {
                slots[slot].push_back({Flag(chain), weights});
                return;
            }
            for (auto idx : candidates(chain.back(), target_dims[j + 1])) {
                if (!graded_has_weight(subquotient(d, chain.back(), subs[idx]), weights[j])) continue;
                chain.push_back(subs[idx]);
                walk();
                chain.pop_back();
            }
        };
        walk();
    });
    std::vector<IndexedFiltration> out;
    for (auto& s : slots)
        for (auto& f : s) out.push_back(std::move(f));
    return out;
}

bool is_ordinary(const FilteredPhiNModule& d, const IndexedFiltration& f) {
    check_filtration(d, f);
    const auto gs = gradeds(d, f.flag);
    for (std::size_t j = 0; j < gs.size(); ++j)
        if (!slopes(gs[j]).is_pure(Rational(-f.weights[j]))) return false;
    return true;
}

SlopeHypothesis slope_hypothesis(const FilteredPhiNModule& d, const IndexedFiltration& f) {
    check_filtration(d, f);
    SlopeHypothesis out;
    const auto gs = gradeds(d, f.flag);
    for (std::size_t j = 0; j < gs.size(); ++j)
        if (f.weights[j] <= 0 && slopes(gs[j]).contains(Rational(-1))) out.offending.push_back(f.weights[j]);
    out.holds = out.offending.empty();
    return out;
}

FiltrationVerdict judge(const FilteredPhiNModule& d, const IndexedFiltration& f) {
    FiltrationVerdict v{f, {}, {}, false, false, false, {}};
    const auto& chain = f.flag.chain();
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) v.multiplicities.push_back(chain[j].dim() - chain[j + 1].dim());
    for (const auto& g : gradeds(d, f.flag)) v.graded_slopes.push_back(slopes(g));
    v.is_ordinary = is_ordinary(d, f);
    const auto sh = slope_hypothesis(d, f);
    v.slope_hypothesis = sh.holds;
    v.theorem_applies = sh.holds;
    v.offending_gradeds = sh.offending;
    return v;
}

bool bloch_kato_fg(const FilteredPhiNModule& d) {
    if (d.dim() == 0) return true;
    const Subspace ker(kernel(d.monodromy()));
    if (ker.is_zero()) return true;
    const MatrixE restricted = induced_maps(ker, d.phi()).restriction;
    const Scalar inv_p(d.field(), Rational::prime_power(d.field().prime, -1));
    const MatrixE shifted = restricted - MatrixE::identity(d.field(), ker.dim()).scaled(inv_p);
    return !determinant(shifted).is_zero();
}

ClassificationReport classify(const FilteredPhiNModule& d, ClassifyOptions opts) {
    ClassificationReport r;
    r.field = d.field();
    r.dimension = d.dim();
    r.slopes = slopes(d);
    r.hodge_tate_weights = hodge_tate_weights(d);
    r.crystalline = is_crystalline(d);
    r.plus_de_rham = std::all_of(r.hodge_tate_weights.begin(), r.hodge_tate_weights.end(),
                                 [](long w) { return w <= 0; });
    r.bloch_kato_f_equals_g = bloch_kato_fg(d);
    r.warnings = d.warnings();
    r.notes.push_back("weak admissibility is tested over the fixed coefficient field " + d.field().describe());

    const ExecOptions exec{opts.threads};
    auto refuse = [&](const std::string& why) {
        r.complete = false;
        r.warnings.push_back(why);
    };

    if (d.dim() > opts.max_dim) {
        refuse("ENUM_INFEASIBLE: dimension " + std::to_string(d.dim()) + " exceeds the enumeration guard " +
               std::to_string(opts.max_dim));
    } else {
        try {
            const auto wa = is_weakly_admissible(d, exec);
            r.weakly_admissible = wa.admissible;
            r.admissibility_witness = wa.witness;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::EnumInfeasible) throw;
            refuse(std::string("ENUM_INFEASIBLE: weak admissibility unknown: ") + e.what());
        }
        try {
            std::vector<FiltrationVerdict> verdicts;
            for (const auto& f : triangulordinary_filtrations(d, exec)) verdicts.push_back(judge(d, f));
            for (const auto& v : verdicts)
                if (v.is_ordinary) {
                    r.ordinary = v;
                    break;
                }
            r.triangulordinary = std::move(verdicts);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::EnumInfeasible) throw;
            refuse(std::string("ENUM_INFEASIBLE: triangulordinary filtrations unknown: ") + e.what());
        }
        try {
            r.trianguline = is_trianguline(d);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::EnumInfeasible) throw;
            refuse(std::string("ENUM_INFEASIBLE: trianguline unknown: ") + e.what() +
                   "; a finite extension of the coefficient field may still admit refinements");
        }
    }
    if (r.weakly_admissible.value_or(false))
        r.notes.push_back("the g and g+ local conditions coincide for this etale de Rham input");
    return r;
}

}  // namespace tord
