#include "tord/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <random>

#include "tord/classify.hpp"
#include "tord/document.hpp"

namespace tord {

namespace {

Scalar p_power(FieldSpec field, long n) { return Scalar(field, Rational::prime_power(field.prime, n)); }
Scalar integer(FieldSpec field, long n) { return Scalar(field, Rational(n)); }

MatrixE rows_matrix(FieldSpec field, std::size_t cols, const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Scalar>> out;
    for (const auto& r : rows) {
        std::vector<Scalar> row;
        for (long x : r) row.push_back(integer(field, x));
        out.push_back(std::move(row));
    }
    return MatrixE::from_rows(field, cols, out);
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders

FilteredPhiNModule cyclotomic(long n, Normalization norm, long prime) {
    const FieldSpec field{prime, 1};
    RawModule raw{field, 1, {"e"}, {EigenBlock{p_power(field, -n)}}, std::nullopt,
                  {{-n, MatrixE::identity(field, 1)}}};
    auto hom = validate_module(raw);
    return norm == Normalization::Homological ? hom : dual(hom);
}

FilteredPhiNModule modular_form(const ModularFormParams& prm) {
    const FieldSpec field = prm.lambda.field();
    std::vector<Violation> bad;
    auto fail = [&](std::string code, std::string msg) { bad.push_back({std::move(code), std::move(msg), {}}); };
    if (prm.k < 2) fail("WEIGHT", "weight k must be at least 2");
    if (!(prm.mu.field() == field)) {
        fail("FIELD_MISMATCH", "lambda and mu live in different coefficient fields");
        throw ValidationError(std::move(bad));
    }
    if (prm.lambda.is_zero() || prm.mu.is_zero()) {
        fail("PHI_SINGULAR", "eigenvalues must be nonzero");
        throw ValidationError(std::move(bad));
    }
    if (prm.lambda == prm.mu) fail("NOT_DISTINCT", "lambda and mu must differ");
    const Rational vl = *prm.lambda.valuation(), vm = *prm.mu.valuation();
    if (vl + vm != Rational(prm.k - 1))
        fail("EIGENVALUE_SUM", "ord(lambda) + ord(mu) = " + (vl + vm).to_string() + ", expected " +
                                   std::to_string(prm.k - 1));
    if (vm < vl) fail("VALUATION_ORDER", "order the eigenvalues so that ord(lambda) <= ord(mu)");
    if (prm.monodromy && !(prm.mu == prm.lambda * p_power(field, 1)))
        fail("MONODROMY_GAP", "N(e_mu) = e_lambda requires mu = p*lambda");
    const bool line_ok = prm.hodge_line.size() == 2 &&
                         std::all_of(prm.hodge_line.begin(), prm.hodge_line.end(),
                                     [&](const Scalar& s) { return s.field() == field; }) &&
                         !(prm.hodge_line[0].is_zero() && prm.hodge_line[1].is_zero());
    if (!line_ok) fail("HODGE_LINE", "the Hodge line needs two coordinates, not both zero");
    if (!bad.empty()) throw ValidationError(std::move(bad));

    std::optional<MatrixE> n;
    if (prm.monodromy) {
        n = MatrixE(field, 2, 2);
        (*n)(0, 1) = Scalar::one(field);
    }
    RawModule raw{field,
                  2,
                  {"e_lambda", "e_mu"},
                  {EigenBlock{prm.lambda}, EigenBlock{prm.mu}},
                  n,
                  {{0, MatrixE::identity(field, 2)}, {prm.k - 1, MatrixE::from_rows(field, 2, {prm.hodge_line})}}};
    auto coh = validate_module(raw);
    if (prm.require_admissible) {
        const auto wa = is_weakly_admissible(coh);
        if (!wa.admissible)
            throw ValidationError({{"NOT_ADMISSIBLE", "Hodge line " + wa.witness->to_string() +
                                                          " breaks weak admissibility", {}}});
    }
    return prm.norm == Normalization::Cohomological ? coh : dual(coh);
}

namespace {

/// H meets every stable subspace in the smallest possible dimension.
bool general_position(const FilteredPhiNModule& d, const Subspace& h) {
    for (const auto& s : stable_subspaces(d)) {
        const std::size_t excess = s.dim() + h.dim() > d.dim() ? s.dim() + h.dim() - d.dim() : 0;
        if (intersect(s, h).dim() != excess) return false;
    }
    return true;
}

struct AbelianShape {
    FieldSpec field;
    std::vector<Block> blocks;
    std::vector<std::string> labels;
    std::vector<std::vector<long>> generic;
    std::vector<std::vector<long>> contains_slope0;
    std::vector<std::size_t> slope0_coords;
};

FilteredPhiNModule build_abelian(const AbelianShape& shape, HodgePosition position) {
    const std::size_t d = shape.labels.size();
    auto build = [&](const MatrixE& h) {
        return validate_module({shape.field, d, shape.labels, shape.blocks, std::nullopt,
                                {{-1, MatrixE::identity(shape.field, d)}, {0, h}}});
    };
    auto acceptable = [&](const FilteredPhiNModule& m) {
        if (!is_weakly_admissible(m).admissible) return false;
        const Subspace h = m.hodge().fil(0);
        if (h.dim() * 2 != d) return false;
        if (position == HodgePosition::Generic) return general_position(m, h);
        return h.contains(Subspace::coordinate(shape.field, d, shape.slope0_coords));
    };

    const auto& fixed = position == HodgePosition::Generic ? shape.generic : shape.contains_slope0;
    auto m = build(rows_matrix(shape.field, d, fixed));
    if (acceptable(m)) return m;

    // Deterministic fallback: keep the forced slope-0 directions and draw
    // the rest from a fixed seed.
    std::mt19937 rng(20260101u);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<std::vector<long>> rows;
        if (position == HodgePosition::ContainsSlope0)
            for (auto c : shape.slope0_coords) {
                std::vector<long> r(d, 0);
                r[c] = 1;
                rows.push_back(r);
            }
        while (rows.size() < d / 2) {
            std::vector<long> r;
            for (std::size_t j = 0; j < d; ++j) r.push_back(static_cast<long>(rng() % 7) - 3);
            rows.push_back(r);
        }
        m = build(rows_matrix(shape.field, d, rows));
        if (acceptable(m)) return m;
    }
    throw Error(ErrorCode::Parameter, "no admissible Hodge position found for the abelian scenario");
}

}  // namespace

FilteredPhiNModule abelian_scenario(int id, HodgePosition position, bool block_split) {
    AbelianShape s;
    if (id == 1) {
        s.field = {3, 3};
        s.blocks = {EigenBlock{p_power(s.field, -1)}, EigenBlock{Scalar::uniformizer_power(s.field, -2)},
                    EigenBlock{Scalar::uniformizer_power(s.field, -1)}, EigenBlock{Scalar::one(s.field)}};
        s.labels = {"e_-1", "e_-2/3", "e_-1/3", "e_0"};
        s.generic = {{1, 1, 1, 1}, {1, 2, 4, 8}};
        s.contains_slope0 = {{0, 0, 0, 1}, {1, 1, 1, 0}};
        s.slope0_coords = {3};
    } else if (id == 2) {
        if (block_split) {
            s.field = {3, 2};
            const Scalar half = Scalar::uniformizer_power(s.field, -1);
            s.blocks = {EigenBlock{p_power(s.field, -1)}, EigenBlock{half}, EigenBlock{-half},
                        EigenBlock{Scalar::one(s.field)}};
            s.labels = {"e_-1", "e_-1/2+", "e_-1/2-", "e_0"};
        } else {
            // X^2 - 1/p splits once u^2 = p is adjoined, so the unsplit
            // variant lives over Q.
            s.field = {3, 1};
            const Polynomial f(s.field, {-p_power(s.field, -1), Scalar::zero(s.field), Scalar::one(s.field)});
            s.blocks = {EigenBlock{p_power(s.field, -1)}, IrreducibleBlock{f}, EigenBlock{Scalar::one(s.field)}};
            s.labels = {"e_-1", "f_0", "f_1", "e_0"};
        }
        s.generic = {{1, 1, 1, 1}, {1, 2, 4, 8}};
        s.contains_slope0 = {{0, 0, 0, 1}, {1, 1, 1, 0}};
        s.slope0_coords = {3};
    } else if (id == 3) {
        s.field = {3, 1};
        const Scalar z = Scalar::zero(s.field), one = Scalar::one(s.field);
        const Polynomial slope_m1(s.field, {integer(s.field, -2) * p_power(s.field, -3), z, z, one});
        const Polynomial slope_half(s.field, {-p_power(s.field, -1), z, one});
        const Polynomial slope_0(s.field, {integer(s.field, -2), z, z, one});
        s.blocks = {IrreducibleBlock{slope_m1}, IrreducibleBlock{slope_half}, IrreducibleBlock{slope_0}};
        s.labels = {"a0", "a1", "a2", "b0", "b1", "c0", "c1", "c2"};
        for (long t = 1; t <= 4; ++t) {
            std::vector<long> row;
            long x = 1;
            for (int j = 0; j < 8; ++j, x *= t) row.push_back(x);
            s.generic.push_back(row);
        }
        s.contains_slope0 = {{0, 0, 0, 0, 0, 1, 0, 0},
                             {0, 0, 0, 0, 0, 0, 1, 0},
                             {0, 0, 0, 0, 0, 0, 0, 1},
                             {1, 1, 1, 1, 1, 0, 0, 0}};
        s.slope0_coords = {5, 6, 7};
    } else {
        throw Error(ErrorCode::Parameter, "abelian scenario id must be 1, 2 or 3");
    }
    return build_abelian(s, position);
}

FilteredPhiNModule counterexample_bad(long prime) {
    const FieldSpec field{prime, 1};
    MatrixE n(field, 2, 2);
    n(1, 0) = Scalar::one(field);
    return validate_module({field,
                            2,
                            {"e_0", "e_-1"},
                            {EigenBlock{Scalar::one(field)}, EigenBlock{p_power(field, -1)}},
                            n,
                            {{0, MatrixE::identity(field, 2)}}});
}

// ---------------------------------------------------------------------------
// Named entries with expectations

namespace {

Json slope_list(std::initializer_list<std::pair<const char*, long>> entries) {
    Json out = Json::array();
    for (const auto& [s, m] : entries) out.push_back({{"slope", s}, {"multiplicity", m}});
    return out;
}

Json coordinate_flag(FieldSpec field, std::size_t d, const std::vector<std::vector<std::size_t>>& inner) {
    std::vector<std::size_t> all(d);
    for (std::size_t i = 0; i < d; ++i) all[i] = i;
    Json out = Json::array();
    out.push_back(subspace_to_json(Subspace::coordinate(field, d, all)));
    for (const auto& idx : inner) out.push_back(subspace_to_json(Subspace::coordinate(field, d, idx)));
    out.push_back(subspace_to_json(Subspace::zero(field, d)));
    return out;
}

Json verdict(Json flag, std::vector<long> weights, std::vector<long> mults, bool ordinary, bool applies) {
    return {{"flag", std::move(flag)},
            {"weights", weights},
            {"multiplicities", mults},
            {"is_ordinary", ordinary},
            {"theorem_applies", applies}};
}

Json trianguline(bool value, long refinements) { return {{"value", value}, {"refinements", refinements}}; }

Json annotations(const std::string& provenance, const std::string& source) {
    return {{"provenance", provenance}, {"source", source}, {"notes", Json::array()}};
}

std::string slope_string(long n) { return Rational(n).to_string(); }

CorpusEntry cyclotomic_entry(const std::string& name, long n, Normalization norm) {
    const bool hom = norm == Normalization::Homological;
    auto d = cyclotomic(n, norm);
    const long weight = hom ? n : -n;
    const long slope = -weight;
    const FieldSpec f = d.field();
    Json v = verdict(coordinate_flag(f, 1, {}), {weight}, {1}, true, true);
    Json expected = {{"dimension", 1},
                     {"slopes", Json::array({{{"slope", slope_string(slope)}, {"multiplicity", 1}}})},
                     {"hodge_tate_weights", {weight}},
                     {"semistable", true},
                     {"weakly_admissible", true},
                     {"etale", true},
                     {"crystalline", true},
                     {"plus_de_rham", weight <= 0},
                     {"ordinary", v},
                     {"triangulordinary", Json::array({v})},
                     {"trianguline", trianguline(true, 1)},
                     {"bloch_kato_f_equals_g", slope != -1 ? true : false}};
    Json ann = annotations("worked-example", "cyclotomic character table");
    ann["notes"].push_back("bloch_kato_f_equals_g is hand-derived: phi has eigenvalue 1/p only for slope -1");
    return {name, std::move(d), std::move(expected), std::move(ann)};
}

struct ModularCase {
    long k;
    long lambda_num, lambda_pow;  // lambda = num * p^pow
    long mu_num, mu_pow;
    bool monodromy;
    std::vector<long> line;
};

FilteredPhiNModule modular_case(const ModularCase& c, Normalization norm, bool require_admissible = true) {
    const FieldSpec field{3, 1};
    ModularFormParams prm;
    prm.k = c.k;
    prm.lambda = integer(field, c.lambda_num) * p_power(field, c.lambda_pow);
    prm.mu = integer(field, c.mu_num) * p_power(field, c.mu_pow);
    prm.monodromy = c.monodromy;
    prm.norm = norm;
    prm.hodge_line = {integer(field, c.line[0]), integer(field, c.line[1])};
    prm.require_admissible = require_admissible;
    return modular_form(prm);
}

Json abelian_verdicts(FieldSpec field, const std::vector<std::pair<std::vector<std::size_t>, bool>>& f1s) {
    Json out = Json::array();
    for (const auto& [idx, applies] : f1s)
        out.push_back(verdict(coordinate_flag(field, 4, {idx}), {0, 1}, {2, 2}, false, applies));
    return out;
}

std::vector<std::string> fixed_names() {
    std::vector<std::string> names{"exmp-bad"};
    for (long n = -2; n <= 2; ++n)
        for (const char* norm : {"hom", "coh"}) names.push_back("cyclotomic:n=" + std::to_string(n) + ":" + norm);
    for (const char* base : {"modular:k=2:ordinary", "modular:k=2:semistable", "modular:k=3:slope1"})
        for (const char* norm : {"coh", "hom"}) names.push_back(std::string(base) + ":" + norm);
    names.push_back("modular:k=2:inadmissible:coh");
    for (const char* s : {"abelian:1", "abelian:2", "abelian:2:unsplit", "abelian:3"})
        for (const char* pos : {"generic", "contains_slope0"}) names.push_back(std::string(s) + ":" + pos);
    return names;
}

[[noreturn]] void unknown(const std::string& name) {
    std::string msg = "unknown corpus entry '" + name + "'; available:";
    for (const auto& n : fixed_names()) msg += " " + n;
    throw Error(ErrorCode::Parameter, msg);
}

CorpusEntry modular_entry(const std::string& name) {
    const FieldSpec q{3, 1};
    const bool hom = name.ends_with(":hom");
    const Normalization norm = hom ? Normalization::Homological : Normalization::Cohomological;
    const std::string base = name.substr(0, name.rfind(':'));
    Json expected;
    Json ann = annotations("worked-example", "modular eigenform tables");

    if (base == "modular:k=2:ordinary") {
        // lambda = 1, mu = p, Hodge line on e_mu: the split ordinary case.
        auto d = modular_case({2, 1, 0, 1, 1, false, {0, 1}}, norm);
        Json v = hom ? verdict(coordinate_flag(q, 2, {{1}}), {0, 1}, {1, 1}, true, true)
                     : verdict(coordinate_flag(q, 2, {{0}}), {-1, 0}, {1, 1}, true, true);
        expected = {{"slopes", hom ? slope_list({{"-1", 1}, {"0", 1}}) : slope_list({{"0", 1}, {"1", 1}})},
                    {"hodge_tate_weights", hom ? std::vector<long>{0, 1} : std::vector<long>{-1, 0}},
                    {"etale", true},
                    {"crystalline", true},
                    {"ordinary", v},
                    {"triangulordinary", Json::array({v})},
                    {"trianguline", trianguline(true, 2)},
                    {"bloch_kato_f_equals_g", !hom}};
        ann["notes"].push_back("the mu-line filtration is excluded because the Hodge line is e_mu");
        return {name, std::move(d), std::move(expected), std::move(ann)};
    }
    if (base == "modular:k=2:semistable") {
        auto d = modular_case({2, 1, 0, 1, 1, true, {0, 1}}, norm);
        Json v = hom ? verdict(coordinate_flag(q, 2, {{1}}), {0, 1}, {1, 1}, true, true)
                     : verdict(coordinate_flag(q, 2, {{0}}), {-1, 0}, {1, 1}, true, true);
        expected = {{"etale", true},
                    {"crystalline", false},
                    {"ordinary", v},
                    {"triangulordinary", Json::array({v})},
                    {"trianguline", trianguline(true, 1)},
                    {"bloch_kato_f_equals_g", !hom}};
        ann["provenance"] = "hand-derived";
        ann["notes"].push_back("N(e_mu) = e_lambda leaves only the lambda line stable");
        return {name, std::move(d), std::move(expected), std::move(ann)};
    }
    if (base == "modular:k=3:slope1") {
        // lambda = p, mu = -p: both eigenvalues of slope k-2 = 1.
        auto d = modular_case({3, 1, 1, -1, 1, false, {1, 1}}, norm);
        Json list = Json::array();
        for (std::size_t i : {0u, 1u})
            list.push_back(hom ? verdict(coordinate_flag(q, 2, {{i}}), {0, 2}, {1, 1}, false, false)
                               : verdict(coordinate_flag(q, 2, {{i}}), {-2, 0}, {1, 1}, false, true));
        if (hom)
            for (auto& v : list) v["offending_gradeds"] = {0};
        expected = {{"slopes", hom ? slope_list({{"-1", 2}}) : slope_list({{"1", 2}})},
                    {"etale", true},
                    {"ordinary", nullptr},
                    {"triangulordinary", list},
                    {"trianguline", trianguline(true, 2)}};
        return {name, std::move(d), std::move(expected), std::move(ann)};
    }
    if (base == "modular:k=2:inadmissible" && !hom) {
        auto d = modular_case({2, 1, 0, 1, 1, false, {1, 0}}, norm, false);
        expected = {{"weakly_admissible", false},
                    {"etale", false},
                    {"admissibility_witness", subspace_to_json(Subspace::coordinate(q, 2, {0}))}};
        ann["notes"].push_back("e_lambda inside Fil^{k-1} breaks weak admissibility");
        return {name, std::move(d), std::move(expected), std::move(ann)};
    }
    unknown(name);
}

CorpusEntry abelian_entry(const std::string& name) {
    const bool generic = name.ends_with(":generic");
    if (!generic && !name.ends_with(":contains_slope0")) unknown(name);
    const auto position = generic ? HodgePosition::Generic : HodgePosition::ContainsSlope0;
    const std::string base = name.substr(0, name.rfind(':'));
    Json ann = annotations("engine-census", "abelian variety slope scenarios");
    Json expected;

    if (base == "abelian:1" || base == "abelian:2") {
        const int id = base == "abelian:1" ? 1 : 2;
        auto d = abelian_scenario(id, position, true);
        const FieldSpec f = d.field();
        // F^1 is a stable plane meeting H trivially; the theorem applies
        // exactly when the slope -1 line e_0 lies in F^1.
        std::vector<std::pair<std::vector<std::size_t>, bool>> f1s;
        if (generic) f1s = {{{0, 1}, true}, {{0, 2}, true}, {{0, 3}, true}, {{1, 2}, false}, {{1, 3}, false}, {{2, 3}, false}};
        else f1s = {{{0, 1}, true}, {{0, 2}, true}, {{1, 2}, false}};
        expected = {{"slopes", id == 1 ? slope_list({{"-1", 1}, {"-2/3", 1}, {"-1/3", 1}, {"0", 1}})
                                       : slope_list({{"-1", 1}, {"-1/2", 2}, {"0", 1}})},
                    {"hodge_tate_weights", {0, 0, 1, 1}},
                    {"etale", true},
                    {"crystalline", true},
                    {"ordinary", nullptr},
                    {"triangulordinary", abelian_verdicts(f, f1s)},
                    {"trianguline", trianguline(true, 24)}};
        ann["divergence"] = {
            {"prose_count", generic ? 4 : 2},
            {"engine_count", f1s.size()},
            {"explanation", id == 1 ? "the prose lists the planes of slopes (-1,-2/3), (-1,-1/3) and, with e_0 "
                                      "outside H, two planes with slope -1 in the quotient; the criterion also "
                                      "accepts the plane (-2/3,-1/3) and, with e_0 outside H, the plane (-1,0)"
                                    : "the prose lists two (-1,-1/2) planes and, with e_0 outside H, two "
                                      "(-1/2,0) planes; the criterion also accepts the planes (-1/2,-1/2) and, "
                                      "with e_0 outside H, (-1,0)"}};
        return {name, std::move(d), std::move(expected), std::move(ann)};
    }
    if (base == "abelian:2:unsplit") {
        auto d = abelian_scenario(2, position, false);
        const FieldSpec f = d.field();
        std::vector<std::pair<std::vector<std::size_t>, bool>> f1s;
        if (generic) f1s = {{{0, 3}, true}, {{1, 2}, false}};
        else f1s = {{{1, 2}, false}};
        expected = {{"slopes", slope_list({{"-1", 1}, {"-1/2", 2}, {"0", 1}})},
                    {"etale", true},
                    {"triangulordinary", abelian_verdicts(f, f1s)},
                    {"trianguline", trianguline(false, 0)}};
        ann["provenance"] = "hand-derived";
        ann["notes"].push_back("without splitting the slope -1/2 plane, no complete stable flag exists");
        return {name, std::move(d), std::move(expected), std::move(ann)};
    }
    if (base == "abelian:3") {
        auto d = abelian_scenario(3, position);
        expected = {{"slopes", slope_list({{"-1", 3}, {"-1/2", 2}, {"0", 3}})},
                    {"hodge_tate_weights", {0, 0, 0, 0, 1, 1, 1, 1}},
                    {"etale", true},
                    {"ordinary", nullptr},
                    {"triangulordinary", Json::array()},
                    {"trianguline", trianguline(false, 0)}};
        ann["provenance"] = "worked-example";
        return {name, std::move(d), std::move(expected), std::move(ann)};
    }
    unknown(name);
}

}  // namespace

std::vector<std::string> corpus_names() { return fixed_names(); }

CorpusEntry corpus_entry(const std::string& name) {
    if (name == "exmp-bad") {
        auto d = counterexample_bad();
        Json expected = {{"dimension", 2},
                         {"slopes", slope_list({{"-1", 1}, {"0", 1}})},
                         {"hodge_tate_weights", {0, 0}},
                         {"semistable", true},
                         {"weakly_admissible", false},
                         {"admissibility_witness", subspace_to_json(Subspace::full(d.field(), 2))},
                         {"etale", false},
                         {"crystalline", false},
                         {"plus_de_rham", true},
                         {"ordinary", nullptr},
                         {"triangulordinary", Json::array()},
                         {"trianguline", trianguline(true, 1)},
                         {"bloch_kato_f_equals_g", false}};
        Json ann = annotations("worked-example", "non-crystalline extension of 1 by the cyclotomic character");
        ann["notes"].push_back("bloch_kato_f_equals_g is hand-derived: ker N = span(e_-1) where phi = 1/p");
        return {name, std::move(d), std::move(expected), std::move(ann)};
    }
    if (name.starts_with("cyclotomic:n=")) {
        const auto rest = name.substr(13);
        const auto colon = rest.find(':');
        long n = 0;
        if (colon == std::string::npos) unknown(name);
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + colon, n);
        if (ec != std::errc() || ptr != rest.data() + colon) unknown(name);
        const auto norm = rest.substr(colon + 1);
        if (norm != "hom" && norm != "coh") unknown(name);
        return cyclotomic_entry(name, n, norm == "hom" ? Normalization::Homological : Normalization::Cohomological);
    }
    if (name.starts_with("modular:")) return modular_entry(name);
    if (name.starts_with("abelian:")) return abelian_entry(name);
    unknown(name);
}

}  // namespace tord
