#include "tord/phimod.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "tord/classify.hpp"
#include "tord/parallel.hpp"

namespace tord {

// ---------------------------------------------------------------------------
// Blocks

std::size_t block_dim(const Block& b) {
    return std::visit(
        [](const auto& blk) -> std::size_t {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, EigenBlock>) return 1;
            else if constexpr (std::is_same_v<T, JordanBlock>) return blk.size;
            else return blk.poly.degree() < 0 ? 0 : static_cast<std::size_t>(blk.poly.degree());
        },
        b);
}

MatrixE block_matrix(const Block& b) {
    return std::visit(
        [](const auto& blk) -> MatrixE {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, EigenBlock>) return MatrixE::jordan(blk.value, 1);
            else if constexpr (std::is_same_v<T, JordanBlock>) return MatrixE::jordan(blk.value, blk.size);
            else return MatrixE::companion(blk.poly);
        },
        b);
}

Polynomial block_charpoly(const Block& b) {
    return std::visit(
        [](const auto& blk) -> Polynomial {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, EigenBlock>) return Polynomial::linear(blk.value);
            else if constexpr (std::is_same_v<T, JordanBlock>)
                return Polynomial::linear(blk.value).pow(static_cast<unsigned>(blk.size));
            else return blk.poly;
        },
        b);
}

std::string block_kind(const Block& b) {
    switch (b.index()) {
        case 0: return "eigen";
        case 1: return "jordan";
        default: return "irreducible";
    }
}

namespace {

FieldSpec block_field(const Block& b) {
    return std::visit(
        [](const auto& blk) -> FieldSpec {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, IrreducibleBlock>) return blk.poly.field();
            else return blk.value.field();
        },
        b);
}

MatrixE assemble_phi(FieldSpec field, const std::vector<Block>& blocks) {
    std::vector<MatrixE> mats;
    mats.reserve(blocks.size());
    for (const auto& b : blocks) mats.push_back(block_matrix(b));
    return MatrixE::block_diagonal(field, mats);
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("e" + std::to_string(i));
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> first_difference(const MatrixE& a, const MatrixE& b) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) return std::make_pair(i, j);
    return std::nullopt;
}

bool is_nilpotent(const MatrixE& n) {
    MatrixE power = n;
    for (std::size_t k = 1; k < n.rows(); ++k) power = power * n;
    return power.is_zero();
}

Scalar prime_scalar(FieldSpec field) { return Scalar(field, Rational(field.prime)); }

std::vector<std::string> slope_shift_warnings(const std::vector<Block>& blocks, const MatrixE& n) {
    std::vector<std::string> out;
    if (n.is_zero()) return out;
    std::vector<std::size_t> off{0};
    for (const auto& b : blocks) off.push_back(off.back() + block_dim(b));
    const FieldSpec field = n.field();
    for (std::size_t tgt = 0; tgt < blocks.size(); ++tgt)
        for (std::size_t src = 0; src < blocks.size(); ++src) {
            bool nonzero = false;
            for (std::size_t r = off[tgt]; r < off[tgt + 1] && !nonzero; ++r)
                for (std::size_t c = off[src]; c < off[src + 1]; ++c)
                    if (!n(r, c).is_zero()) { nonzero = true; break; }
            if (!nonzero) continue;
            // N carries the slope-s part into slope s-1.
            const auto src_slopes = newton_slopes(block_charpoly(blocks[src]));
            const auto tgt_slopes = newton_slopes(block_charpoly(blocks[tgt]));
            if (tgt_slopes != src_slopes.shifted(Rational(-1)))
                out.push_back("monodromy maps block " + std::to_string(src) + " (slopes " +
                              src_slopes.to_string() + ") into block " + std::to_string(tgt) +
                              " (slopes " + tgt_slopes.to_string() + ") without the slope shift by -1");
        }
    (void)field;
    return out;
}

Subspace embed(const Subspace& s, std::size_t ambient, std::size_t offset) {
    MatrixE rows(s.field(), s.dim(), ambient);
    for (std::size_t r = 0; r < s.dim(); ++r)
        for (std::size_t j = 0; j < s.ambient_dim(); ++j) rows(r, offset + j) = s.basis()(r, j);
    return Subspace(rows);
}

Subspace transform(const Subspace& s, const MatrixE& m) {
    MatrixE rows(s.field(), s.dim(), s.ambient_dim());
    for (std::size_t r = 0; r < s.dim(); ++r) {
        const auto v = m.apply(s.basis().row(r));
        for (std::size_t j = 0; j < v.size(); ++j) rows(r, j) = v[j];
    }
    return Subspace(rows);
}

bool is_coordinate(const Subspace& s) {
    for (std::size_t r = 0; r < s.dim(); ++r)
        for (std::size_t j = 0; j < s.ambient_dim(); ++j)
            if (j != s.pivots()[r] && !s.basis()(r, j).is_zero()) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hodge data

HodgeData::HodgeData(FieldSpec field, std::size_t ambient, std::vector<HodgeJump> jumps)
    : field_(field), ambient_(ambient), jumps_(std::move(jumps)) {
    if (ambient_ > 0 && jumps_.empty())
        throw Error(ErrorCode::InvalidFiltration, "Hodge filtration needs at least one jump");
    for (std::size_t j = 0; j < jumps_.size(); ++j) {
        const auto& sp = jumps_[j].space;
        if (sp.ambient_dim() != ambient_)
            throw Error(ErrorCode::DimensionMismatch, "Hodge space in the wrong ambient space");
        if (sp.is_zero()) throw Error(ErrorCode::InvalidFiltration, "Hodge jump with zero space");
        if (j == 0 && !sp.is_full())
            throw Error(ErrorCode::InvalidFiltration, "first Hodge space must be the whole module");
        if (j > 0) {
            const auto& prev = jumps_[j - 1];
            if (prev.degree >= jumps_[j].degree)
                throw Error(ErrorCode::InvalidFiltration, "Hodge degrees must strictly increase");
            if (sp.dim() >= prev.space.dim() || !prev.space.contains(sp))
                throw Error(ErrorCode::InvalidFiltration, "Hodge spaces must strictly decrease");
        }
    }
}

Subspace HodgeData::fil(long i) const {
    for (const auto& j : jumps_)
        if (j.degree >= i) return j.space;
    return Subspace::zero(field_, ambient_);
}

std::vector<std::pair<long, std::size_t>> HodgeData::graded_dims() const {
    std::vector<std::pair<long, std::size_t>> out;
    for (std::size_t j = 0; j < jumps_.size(); ++j) {
        const std::size_t next = j + 1 < jumps_.size() ? jumps_[j + 1].space.dim() : 0;
        out.emplace_back(jumps_[j].degree, jumps_[j].space.dim() - next);
    }
    return out;
}

HodgeData hodge_from_values(FieldSpec field, std::size_t ambient,
                            const std::vector<std::pair<long, Subspace>>& values) {
    std::vector<HodgeJump> jumps;
    for (std::size_t j = 0; j < values.size(); ++j) {
        const std::size_t next = j + 1 < values.size() ? values[j + 1].second.dim() : 0;
        if (values[j].second.dim() > next) jumps.push_back({values[j].first, values[j].second});
    }
    return HodgeData(field, ambient, std::move(jumps));
}

// ---------------------------------------------------------------------------
// Construction and validation

FilteredPhiNModule::FilteredPhiNModule(FieldSpec field, MatrixE phi, MatrixE monodromy, HodgeData hodge,
                                       std::vector<Block> blocks, std::vector<std::string> labels,
                                       std::vector<std::string> warnings)
    : field_(field),
      phi_(std::move(phi)),
      monodromy_(std::move(monodromy)),
      hodge_(std::move(hodge)),
      blocks_(std::move(blocks)),
      labels_(std::move(labels)),
      warnings_(std::move(warnings)) {}

FilteredPhiNModule FilteredPhiNModule::zero(FieldSpec field) {
    return FilteredPhiNModule(field, MatrixE(field, 0, 0), MatrixE(field, 0, 0), HodgeData(field, 0, {}), {}, {},
                              {});
}

std::vector<std::size_t> FilteredPhiNModule::block_offsets() const {
    std::vector<std::size_t> out;
    std::size_t off = 0;
    for (const auto& b : blocks_) {
        out.push_back(off);
        off += block_dim(b);
    }
    return out;
}

std::vector<Violation> check_module(const RawModule& raw) {
    std::vector<Violation> out;
    auto add = [&](std::string code, std::string msg, std::vector<std::size_t> witness = {}) {
        out.push_back({std::move(code), std::move(msg), std::move(witness)});
    };
    const std::size_t d = raw.dim;
    if (d == 0) {
        add("DIMENSION", "module dimension must be positive");
        return out;
    }
    if (!raw.labels.empty() && raw.labels.size() != d)
        add("DIMENSION", "expected " + std::to_string(d) + " labels, got " + std::to_string(raw.labels.size()));

    bool blocks_ok = true;
    std::size_t total = 0;
    for (std::size_t i = 0; i < raw.blocks.size(); ++i) {
        const Block& b = raw.blocks[i];
        if (!(block_field(b) == raw.field)) {
            add("BLOCK_MISMATCH", "block " + std::to_string(i) + " uses another coefficient field", {i});
            blocks_ok = false;
            continue;
        }
        if (const auto* irr = std::get_if<IrreducibleBlock>(&b)) {
            if (!irr->poly.is_monic() || irr->poly.degree() < 1) {
                add("BLOCK_MISMATCH", "irreducible block " + std::to_string(i) + " needs a monic polynomial of degree >= 1", {i});
                blocks_ok = false;
                continue;
            }
        }
        if (block_dim(b) == 0) {
            add("BLOCK_MISMATCH", "block " + std::to_string(i) + " is empty", {i});
            blocks_ok = false;
        }
        total += block_dim(b);
    }
    if (blocks_ok && total != d) {
        add("BLOCK_MISMATCH", "blocks cover " + std::to_string(total) + " dimensions, module has " + std::to_string(d));
        blocks_ok = false;
    }

    std::optional<MatrixE> phi;
    if (blocks_ok) {
        phi = assemble_phi(raw.field, raw.blocks);
        for (std::size_t i = 0; i < raw.blocks.size(); ++i)
            if (block_charpoly(raw.blocks[i]).coeff(0).is_zero())
                add("PHI_SINGULAR", "block " + std::to_string(i) + " has eigenvalue 0", {i});
    }

    MatrixE n(raw.field, d, d);
    bool n_ok = true;
    if (raw.monodromy) {
        if (raw.monodromy->rows() != d || raw.monodromy->cols() != d) {
            add("DIMENSION", "monodromy must be " + std::to_string(d) + "x" + std::to_string(d));
            n_ok = false;
        } else if (!(raw.monodromy->field() == raw.field)) {
            add("FIELD_MISMATCH", "monodromy uses another coefficient field");
            n_ok = false;
        } else {
            n = *raw.monodromy;
        }
    }
    if (phi && n_ok) {
        const MatrixE lhs = n * *phi;
        const MatrixE rhs = (*phi * n).scaled(prime_scalar(raw.field));
        if (auto diff = first_difference(lhs, rhs))
            add("NOT_COMMUTING", "N*phi differs from p*phi*N at entry (" + std::to_string(diff->first) + ", " +
                                     std::to_string(diff->second) + ")",
                {diff->first, diff->second});
    }
    if (n_ok && !is_nilpotent(n)) add("NOT_NILPOTENT", "monodromy is not nilpotent");

    if (raw.hodge.empty()) {
        add("HODGE_NOT_CHAIN", "Hodge filtration has no jumps");
    } else {
        std::vector<std::size_t> order(raw.hodge.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return raw.hodge[a].first < raw.hodge[b].first; });
        std::optional<Subspace> prev;
        bool shapes_ok = true;
        for (std::size_t k = 0; k < order.size(); ++k) {
            const auto& [deg, gens] = raw.hodge[order[k]];
            if (gens.cols() != d || !(gens.field() == raw.field)) {
                add("DIMENSION", "Hodge basis at degree " + std::to_string(deg) + " has the wrong shape or field",
                    {order[k]});
                shapes_ok = false;
                continue;
            }
            if (k > 0 && raw.hodge[order[k - 1]].first == deg)
                add("HODGE_NOT_CHAIN", "degree " + std::to_string(deg) + " listed twice", {order[k]});
            if (!shapes_ok) continue;
            Subspace s(gens);
            if (s.is_zero()) add("HODGE_NOT_CHAIN", "zero space listed at degree " + std::to_string(deg), {order[k]});
            if (k == 0 && !s.is_full())
                add("HODGE_NOT_CHAIN", "the lowest listed degree must carry the whole module", {order[k]});
            if (prev && (s.dim() >= prev->dim() || !prev->contains(s)))
                add("HODGE_NOT_CHAIN", "space at degree " + std::to_string(deg) +
                                           " is not strictly inside the previous one", {order[k]});
            prev = std::move(s);
        }
    }
    return out;
}

FilteredPhiNModule validate_module(const RawModule& raw) {
    auto violations = check_module(raw);
    if (!violations.empty()) throw ValidationError(std::move(violations));

    MatrixE phi = assemble_phi(raw.field, raw.blocks);
    MatrixE n = raw.monodromy ? *raw.monodromy : MatrixE(raw.field, raw.dim, raw.dim);

    auto hodge_in = raw.hodge;
    std::stable_sort(hodge_in.begin(), hodge_in.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<HodgeJump> jumps;
    for (const auto& [deg, gens] : hodge_in) jumps.push_back({deg, Subspace(gens)});
    HodgeData hodge(raw.field, raw.dim, std::move(jumps));

    auto warnings = slope_shift_warnings(raw.blocks, n);
    auto labels = raw.labels.empty() ? default_labels(raw.dim) : raw.labels;
    return FilteredPhiNModule(raw.field, std::move(phi), std::move(n), std::move(hodge), raw.blocks,
                              std::move(labels), std::move(warnings));
}

FilteredPhiNModule assemble_unchecked(FieldSpec field, std::vector<Block> blocks, MatrixE monodromy,
                                      HodgeData hodge, std::vector<std::string> labels) {
    MatrixE phi = assemble_phi(field, blocks);
    if (!(monodromy * phi == (phi * monodromy).scaled(prime_scalar(field))))
        throw std::logic_error("internal construction broke N*phi = p*phi*N");
    if (!is_nilpotent(monodromy)) throw std::logic_error("internal construction broke nilpotence of N");
    auto warnings = slope_shift_warnings(blocks, monodromy);
    return FilteredPhiNModule(field, std::move(phi), std::move(monodromy), std::move(hodge), std::move(blocks),
                              std::move(labels), std::move(warnings));
}

// ---------------------------------------------------------------------------
// Invariants

SlopeMultiset slopes(const FilteredPhiNModule& d) {
    if (d.dim() == 0) return {};
    return newton_slopes(charpoly(d.phi()));
}

Rational t_N(const FilteredPhiNModule& d, const Subspace& s) {
    if (s.is_zero()) return Rational(0);
    const auto maps = induced_maps(s, d.phi());
    return *determinant(maps.restriction).valuation();
}

Rational t_H(const FilteredPhiNModule& d, const Subspace& s) {
    const auto& jumps = d.hodge().jumps();
    std::vector<std::size_t> dims;
    for (const auto& j : jumps) dims.push_back(intersect(j.space, s).dim());
    dims.push_back(0);
    Rational total(0);
    for (std::size_t j = 0; j < jumps.size(); ++j)
        total += Rational(jumps[j].degree) * Rational(static_cast<long>(dims[j] - dims[j + 1]));
    return total;
}

bool is_crystalline(const FilteredPhiNModule& d) { return d.monodromy().is_zero(); }

std::vector<long> hodge_tate_weights(const FilteredPhiNModule& d) {
    std::vector<long> out;
    for (const auto& [deg, mult] : d.hodge().graded_dims())
        for (std::size_t i = 0; i < mult; ++i) out.push_back(-deg);
    std::sort(out.begin(), out.end());
    return out;
}

AdmissibilityResult is_weakly_admissible(const FilteredPhiNModule& d, ExecOptions opts) {
    const Subspace full = Subspace::full(d.field(), d.dim());
    if (t_H(d, full) != t_N(d, full)) return {false, full};
    const auto subs = stable_subspaces(d);
    std::vector<char> violates(subs.size(), 0);
    parallel_for(subs.size(), opts.threads, [&](std::size_t i) {
        violates[i] = t_H(d, subs[i]) > t_N(d, subs[i]) ? 1 : 0;
    });
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (violates[i]) return {false, subs[i]};
    return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Dual, twist, direct sum

namespace {

struct Rebased {
    Block block;
    MatrixE change;  // columns: new basis in old coordinates
};

std::vector<Scalar> unit(FieldSpec field, std::size_t n, std::size_t i) {
    std::vector<Scalar> v(n, Scalar::zero(field));
    v[i] = Scalar::one(field);
    return v;
}

MatrixE from_columns(FieldSpec field, const std::vector<std::vector<Scalar>>& cols) {
    const std::size_t n = cols.empty() ? 0 : cols.front().size();
    MatrixE m(field, n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < n; ++r) m(r, c) = cols[c][r];
    return m;
}

// Intertwiner P with A P = P C_g: columns A^j w.
MatrixE krylov_companion(const MatrixE& a, std::vector<Scalar> w) {
    std::vector<std::vector<Scalar>> cols;
    for (std::size_t j = 0; j < a.rows(); ++j) {
        cols.push_back(w);
        w = a.apply(w);
    }
    return from_columns(a.field(), cols);
}

// Intertwiner P with A P = P J(mu): column j is (A - mu)^{m-1-j} w.
MatrixE krylov_jordan(const MatrixE& a, const Scalar& mu, std::vector<Scalar> w) {
    const std::size_t m = a.rows();
    const MatrixE shifted = a - MatrixE::identity(a.field(), m).scaled(mu);
    std::vector<std::vector<Scalar>> cols(m);
    for (std::size_t k = 0; k < m; ++k) {
        cols[m - 1 - k] = w;
        w = shifted.apply(w);
    }
    return from_columns(a.field(), cols);
}

Polynomial reciprocal_monic(const Polynomial& f) {
    const auto& c = f.coeffs();
    std::vector<Scalar> g(c.rbegin(), c.rend());
    return Polynomial(f.field(), std::move(g)).monic();
}

bool poly_less(const Polynomial& a, const Polynomial& b) {
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                        b.coeffs().end());
}

// Builds an intertwiner for block matrix `source` toward its canonical dual
// `target`, starting from vector w.
using IntertwinerFn = MatrixE (*)(const Block&, const std::vector<Scalar>&);

MatrixE dual_intertwiner(const Block& source, const std::vector<Scalar>& w) {
    const MatrixE a = block_matrix(source).inverse().transpose();
    if (const auto* j = std::get_if<JordanBlock>(&source)) return krylov_jordan(a, j->value.inverse(), w);
    return krylov_companion(a, w);
}

// The dual of a self-dual block needs P = ±P^T so that dualizing twice
// returns the original coordinates. Dualizing twice composes to P^-T P,
// which is -1 for an alternating P; the sign is therefore flipped on the
// starred side so the two passes cancel.
MatrixE self_dual_change(const Block& b, bool starred) {
    const std::size_t m = block_dim(b);
    const FieldSpec field = block_field(b);
    std::vector<std::vector<Scalar>> seeds;
    for (std::size_t i = 0; i < m; ++i) seeds.push_back(unit(field, m, i));
    seeds.emplace_back(m, Scalar::one(field));
    for (const auto& w : seeds) {
        const MatrixE p = dual_intertwiner(b, w);
        if (const MatrixE sym = p + p.transpose(); sym.rank() == m) return sym;
        if (const MatrixE alt = p - p.transpose(); alt.rank() == m)
            return starred ? alt.scaled(-Scalar::one(field)) : alt;
    }
    throw Error(ErrorCode::Parameter, "no symmetric or alternating dual basis found for a self-dual block");
}

Rebased dual_block(const Block& b, bool starred) {
    const FieldSpec field = block_field(b);
    if (const auto* e = std::get_if<EigenBlock>(&b))
        return {EigenBlock{e->value.inverse()}, MatrixE::identity(field, 1)};

    Block target = b;
    bool self_dual = false;
    bool primary = true;
    if (const auto* j = std::get_if<JordanBlock>(&b)) {
        const Scalar inv = j->value.inverse();
        target = JordanBlock{inv, j->size};
        self_dual = inv == j->value;
        primary = j->value < inv;
    } else {
        const auto& f = std::get<IrreducibleBlock>(b).poly;
        const Polynomial g = reciprocal_monic(f);
        target = IrreducibleBlock{g};
        self_dual = g == f;
        primary = poly_less(f, g);
    }

    MatrixE change(field, 0, 0);
    const std::size_t m = block_dim(b);
    if (self_dual) change = self_dual_change(b, starred);
    else if (primary) change = dual_intertwiner(b, unit(field, m, 0));
    else change = dual_intertwiner(target, unit(field, m, 0)).transpose();

    const MatrixE a = block_matrix(b).inverse().transpose();
    if (!(change.inverse() * a * change == block_matrix(target)))
        throw std::logic_error("dual block basis change failed to reach canonical form");
    return {std::move(target), std::move(change)};
}

Rebased twist_block(const Block& b, const Scalar& c) {
    const FieldSpec field = block_field(b);
    const std::size_t m = block_dim(b);
    if (const auto* e = std::get_if<EigenBlock>(&b)) return {EigenBlock{c * e->value}, MatrixE::identity(field, 1)};
    std::vector<Scalar> diag;
    if (const auto* j = std::get_if<JordanBlock>(&b)) {
        const Scalar cinv = c.inverse();
        Scalar q = Scalar::one(field);
        for (std::size_t i = 0; i < m; ++i, q *= cinv) diag.push_back(q);
        return {JordanBlock{c * j->value, j->size}, MatrixE::diagonal(field, diag)};
    }
    const auto& f = std::get<IrreducibleBlock>(b).poly;
    std::vector<Scalar> fc(f.coeffs().size(), Scalar::zero(field));
    Scalar q = Scalar::one(field);
    for (std::size_t i = 0; i < m; ++i, q *= c) diag.push_back(q);
    Scalar pw = Scalar::one(field);
    for (std::size_t i = f.coeffs().size(); i-- > 0; pw *= c) fc[i] = f.coeffs()[i] * pw;
    return {IrreducibleBlock{Polynomial(field, std::move(fc))}, MatrixE::diagonal(field, diag)};
}

// Moves module data expressed in old coordinates to the basis given by the
// columns of `change`; the new blocks must assemble to change^-1 phi change.
FilteredPhiNModule rebase(FieldSpec field, const MatrixE& phi_old, const MatrixE& n_old,
                          const std::vector<std::pair<long, Subspace>>& hodge_old, std::vector<Block> blocks,
                          const MatrixE& change, std::vector<std::string> labels) {
    const std::size_t d = phi_old.rows();
    const MatrixE inv = change.inverse();
    if (!(inv * phi_old * change == assemble_phi(field, blocks)))
        throw std::logic_error("basis change does not produce the declared blocks");
    std::vector<std::pair<long, Subspace>> values;
    for (const auto& [deg, s] : hodge_old) values.emplace_back(deg, transform(s, inv));
    return assemble_unchecked(field, std::move(blocks), inv * n_old * change, hodge_from_values(field, d, values),
                              std::move(labels));
}

MatrixE block_diag_changes(FieldSpec field, const std::vector<Rebased>& parts) {
    std::vector<MatrixE> mats;
    for (const auto& p : parts) mats.push_back(p.change);
    return MatrixE::block_diagonal(field, mats);
}

}  // namespace

FilteredPhiNModule dual(const FilteredPhiNModule& d) {
    if (d.dim() == 0) return d;
    const FieldSpec field = d.field();
    const MatrixE phi_dual = d.phi().inverse().transpose();
    const MatrixE n_dual = d.monodromy().transpose().scaled(-Scalar::one(field));

    // Fil^i(D*) = ann(Fil^{1-i} D): the jump at n with space S_j becomes a
    // jump at -n carrying ann(S_{j+1}).
    const auto& jumps = d.hodge().jumps();
    std::vector<std::pair<long, Subspace>> values;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
        const std::size_t j = jumps.size() - 1 - k;
        values.emplace_back(-jumps[j].degree, j + 1 < jumps.size() ? jumps[j + 1].space.annihilator()
                                                                   : Subspace::full(field, d.dim()));
    }

    std::vector<Rebased> parts;
    std::vector<Block> blocks;
    const auto offsets = d.block_offsets();
    for (std::size_t i = 0; i < d.blocks().size(); ++i) {
        const auto& b = d.blocks()[i];
        const std::string& first = d.labels()[offsets[i]];
        parts.push_back(dual_block(b, !first.empty() && first.back() == '*'));
        blocks.push_back(parts.back().block);
    }
    std::vector<std::string> labels;
    for (const auto& l : d.labels())
        labels.push_back(!l.empty() && l.back() == '*' ? l.substr(0, l.size() - 1) : l + "*");

    return rebase(field, phi_dual, n_dual, values, std::move(blocks), block_diag_changes(field, parts),
                  std::move(labels));
}

FilteredPhiNModule twist(const FilteredPhiNModule& d, long n) {
    if (d.dim() == 0) return d;
    const FieldSpec field = d.field();
    const Scalar c(field, Rational::prime_power(field.prime, -n));
    std::vector<std::pair<long, Subspace>> values;
    for (const auto& j : d.hodge().jumps()) values.emplace_back(j.degree - n, j.space);
    std::vector<Rebased> parts;
    std::vector<Block> blocks;
    for (const auto& b : d.blocks()) {
        parts.push_back(twist_block(b, c));
        blocks.push_back(parts.back().block);
    }
    return rebase(field, d.phi().scaled(c), d.monodromy(), values, std::move(blocks),
                  block_diag_changes(field, parts), d.labels());
}

FilteredPhiNModule direct_sum(const FilteredPhiNModule& a, const FilteredPhiNModule& b) {
    if (!(a.field() == b.field()))
        throw Error(ErrorCode::FieldMismatch, "direct sum of modules over different coefficient fields");
    if (a.dim() == 0) return b;
    if (b.dim() == 0) return a;
    const FieldSpec field = a.field();
    const std::size_t d = a.dim() + b.dim();

    std::vector<Block> blocks = a.blocks();
    blocks.insert(blocks.end(), b.blocks().begin(), b.blocks().end());
    const std::vector<MatrixE> ns{a.monodromy(), b.monodromy()};
    MatrixE n = MatrixE::block_diagonal(field, ns);

    std::set<long> degrees;
    for (const auto& j : a.hodge().jumps()) degrees.insert(j.degree);
    for (const auto& j : b.hodge().jumps()) degrees.insert(j.degree);
    std::vector<std::pair<long, Subspace>> values;
    for (long deg : degrees)
        values.emplace_back(deg, sum(embed(a.hodge().fil(deg), d, 0), embed(b.hodge().fil(deg), d, a.dim())));

    std::vector<std::string> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    return assemble_unchecked(field, std::move(blocks), std::move(n), hodge_from_values(field, d, values),
                              std::move(labels));
}

FilteredPhiNModule subquotient(const FilteredPhiNModule& d, const Subspace& upper, const Subspace& lower) {
    if (!upper.contains(lower)) throw Error(ErrorCode::InvalidFiltration, "subquotient needs lower ⊆ upper");
    for (const Subspace* s : {&upper, &lower}) {
        if (!is_coordinate(*s))
            throw Error(ErrorCode::NotInvariant, "subquotient needs block-compatible coordinate subspaces");
        if (!is_invariant(*s, d.phi()) || !is_invariant(*s, d.monodromy()))
            throw Error(ErrorCode::NotInvariant, "subquotient needs (phi,N)-stable subspaces");
    }
    const FieldSpec field = d.field();
    std::vector<std::size_t> coords;
    std::set_difference(upper.pivots().begin(), upper.pivots().end(), lower.pivots().begin(),
                        lower.pivots().end(), std::back_inserter(coords));
    if (coords.empty()) return FilteredPhiNModule::zero(field);

    std::vector<Block> blocks;
    const auto offsets = d.block_offsets();
    for (std::size_t k = 0; k < d.blocks().size(); ++k) {
        const std::size_t lo = offsets[k], hi = lo + block_dim(d.blocks()[k]);
        std::vector<std::size_t> members;
        for (auto c : coords)
            if (c >= lo && c < hi) members.push_back(c);
        if (members.empty()) continue;
        const Block& b = d.blocks()[k];
        if (std::holds_alternative<EigenBlock>(b)) {
            blocks.push_back(b);
        } else if (const auto* j = std::get_if<JordanBlock>(&b)) {
            if (members.back() - members.front() + 1 != members.size())
                throw Error(ErrorCode::NotInvariant, "subquotient cuts a Jordan block out of order");
            blocks.push_back(JordanBlock{j->value, members.size()});
        } else {
            if (members.size() != hi - lo)
                throw Error(ErrorCode::NotInvariant, "subquotient splits an irreducible block");
            blocks.push_back(b);
        }
    }

    std::vector<std::pair<long, Subspace>> values;
    for (const auto& j : d.hodge().jumps()) {
        const Subspace inside = intersect(j.space, upper);
        const MatrixE rows = inside.basis();
        std::vector<std::size_t> all_rows(rows.rows());
        for (std::size_t r = 0; r < all_rows.size(); ++r) all_rows[r] = r;
        values.emplace_back(j.degree, Subspace(rows.submatrix(all_rows, coords)));
    }
    std::vector<std::string> labels;
    for (auto c : coords) labels.push_back(d.labels()[c]);
    return assemble_unchecked(field, std::move(blocks), d.monodromy().submatrix(coords, coords),
                              hodge_from_values(field, coords.size(), values), std::move(labels));
}

}  // namespace tord
