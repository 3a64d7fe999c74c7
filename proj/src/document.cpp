#include "tord/document.hpp"

#include <sstream>

namespace tord {

namespace {

[[noreturn]] void syntax(const std::string& msg) { throw Error(ErrorCode::Syntax, msg); }

const Json& field_of(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) syntax(where + " must be an object");
    const auto it = obj.find(key);
    if (it == obj.end()) syntax(where + " lacks \"" + key + "\"");
    return *it;
}

long integer_of(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) syntax(where + " must be an integer");
    return j.get<long>();
}

Scalar scalar_of(const Json& j, FieldSpec field, const std::string& where) {
    if (!j.is_string()) syntax(where + " must be a scalar literal string");
    try {
        return Scalar::parse(j.get<std::string>(), field);
    } catch (const Error& e) {
        syntax(where + ": " + e.what());
    }
}

/// Rows of scalar literals; `cols` fixes the width when no row is present.
MatrixE matrix_of(const Json& j, FieldSpec field, std::size_t cols, const std::string& where) {
    if (!j.is_array()) syntax(where + " must be an array of rows");
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string at = where + "[" + std::to_string(r) + "]";
        if (!j[r].is_array()) syntax(at + " must be an array");
        std::vector<Scalar> row;
        for (std::size_t c = 0; c < j[r].size(); ++c)
            row.push_back(scalar_of(j[r][c], field, at + "[" + std::to_string(c) + "]"));
        if (!rows.empty() && row.size() != rows.front().size()) syntax(where + " has rows of different lengths");
        rows.push_back(std::move(row));
    }
    return MatrixE::from_rows(field, rows.empty() ? cols : rows.front().size(), rows);
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

Block block_of(const Json& j, FieldSpec field, const std::string& where) {
    const Json& type = field_of(j, "type", where);
    if (!type.is_string()) syntax(where + ".type must be a string");
    const auto t = type.get<std::string>();
    if (t == "eigen") return EigenBlock{scalar_of(field_of(j, "value", where), field, where + ".value")};
    if (t == "jordan") {
        const long size = integer_of(field_of(j, "size", where), where + ".size");
        if (size < 1) syntax(where + ".size must be positive");
        return JordanBlock{scalar_of(field_of(j, "value", where), field, where + ".value"),
                           static_cast<std::size_t>(size)};
    }
    if (t == "irreducible") {
        const Json& cs = field_of(j, "coefficients", where);
        if (!cs.is_array()) syntax(where + ".coefficients must be an array");
        std::vector<Scalar> coeffs;
        for (std::size_t i = 0; i < cs.size(); ++i)
            coeffs.push_back(scalar_of(cs[i], field, where + ".coefficients[" + std::to_string(i) + "]"));
        return IrreducibleBlock{Polynomial(field, std::move(coeffs))};
    }
    syntax(where + ".type must be eigen, jordan or irreducible");
}

Json rows_json(const MatrixE& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
        out.push_back(std::move(row));
    }
    return out;
}

Json block_json(const Block& b) {
    Json out = {{"type", block_kind(b)}};
    if (const auto* e = std::get_if<EigenBlock>(&b)) {
        out["value"] = e->value.to_string();
    } else if (const auto* j = std::get_if<JordanBlock>(&b)) {
        out["value"] = j->value.to_string();
        out["size"] = j->size;
    } else {
        Json cs = Json::array();
        for (const auto& c : std::get<IrreducibleBlock>(b).poly.coeffs()) cs.push_back(c.to_string());
        out["coefficients"] = std::move(cs);
    }
    return out;
}

}  // namespace

RawModule raw_module_from_json(const Json& doc) {
    if (!doc.is_object()) syntax("module document must be a JSON object");
    const long prime = integer_of(field_of(doc, "prime", "document"), "prime");
    const long ram = integer_of(field_of(doc, "ramification", "document"), "ramification");
    const long dim = integer_of(field_of(doc, "dimension", "document"), "dimension");
    if (!is_prime(prime)) syntax("prime must be a prime number");
    if (ram < 1) syntax("ramification must be at least 1");
    if (dim < 0) syntax("dimension must be nonnegative");

    RawModule raw;
    raw.field = FieldSpec{prime, ram};
    raw.dim = static_cast<std::size_t>(dim);
    if (const auto it = doc.find("labels"); it != doc.end()) {
        if (!it->is_array()) syntax("labels must be an array of strings");
        for (const auto& l : *it) {
            if (!l.is_string()) syntax("labels must be an array of strings");
            raw.labels.push_back(l.get<std::string>());
        }
    }
    const Json& blocks = field_of(doc, "blocks", "document");
    if (!blocks.is_array()) syntax("blocks must be an array");
    for (std::size_t i = 0; i < blocks.size(); ++i)
        raw.blocks.push_back(block_of(blocks[i], raw.field, "blocks[" + std::to_string(i) + "]"));
    if (const auto it = doc.find("monodromy"); it != doc.end() && !it->is_null())
        raw.monodromy = matrix_of(*it, raw.field, raw.dim, "monodromy");
    const Json& hodge = field_of(doc, "hodge", "document");
    if (!hodge.is_array()) syntax("hodge must be an array");
    for (std::size_t i = 0; i < hodge.size(); ++i) {
        const std::string where = "hodge[" + std::to_string(i) + "]";
        const long degree = integer_of(field_of(hodge[i], "degree", where), where + ".degree");
        raw.hodge.emplace_back(degree, matrix_of(field_of(hodge[i], "basis", where), raw.field, raw.dim,
                                                 where + ".basis"));
    }
    return raw;
}

FilteredPhiNModule module_from_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        syntax(std::string("invalid JSON: ") + e.what());
    }
    return validate_module(raw_module_from_json(doc));
}

Json module_to_json(const FilteredPhiNModule& d) {
    Json blocks = Json::array();
    for (const auto& b : d.blocks()) blocks.push_back(block_json(b));
    Json hodge = Json::array();
    for (const auto& j : d.hodge().jumps()) hodge.push_back({{"degree", j.degree}, {"basis", rows_json(j.space.basis())}});
    return {{"prime", d.field().prime},
            {"ramification", d.field().ramification},
            {"dimension", d.dim()},
            {"labels", d.labels()},
            {"blocks", std::move(blocks)},
            {"monodromy", rows_json(d.monodromy())},
            {"hodge", std::move(hodge)}};
}

Json scalar_rows_to_json(const MatrixE& m) { return rows_json(m); }

Json subspace_to_json(const Subspace& s) { return rows_json(s.basis()); }

Json slopes_to_json(const SlopeMultiset& s) {
    Json out = Json::array();
    for (const auto& e : s.entries()) out.push_back({{"slope", e.slope.to_string()}, {"multiplicity", e.multiplicity}});
    return out;
}

Json verdict_to_json(const FiltrationVerdict& v) {
    Json flag = Json::array();
    for (const auto& s : v.filtration.flag.chain()) flag.push_back(subspace_to_json(s));
    Json graded = Json::array();
    for (const auto& s : v.graded_slopes) graded.push_back(slopes_to_json(s));
    return {{"flag", std::move(flag)},
            {"weights", v.filtration.weights},
            {"multiplicities", v.multiplicities},
            {"graded_slopes", std::move(graded)},
            {"is_ordinary", v.is_ordinary},
            {"slope_hypothesis", v.slope_hypothesis},
            {"theorem_applies", v.theorem_applies},
            {"offending_gradeds", v.offending_gradeds}};
}

Json report_to_json(const ClassificationReport& r) {
    const Json unknown = "unknown";
    Json out;
    out["dimension"] = r.dimension;
    out["prime"] = r.field.prime;
    out["ramification"] = r.field.ramification;
    out["coefficient_field"] = r.field.describe();
    out["slopes"] = slopes_to_json(r.slopes);
    out["hodge_tate_weights"] = r.hodge_tate_weights;
    out["semistable"] = r.semistable;
    out["weakly_admissible"] = r.weakly_admissible ? Json(*r.weakly_admissible) : unknown;
    if (!r.weakly_admissible) out["admissibility_witness"] = unknown;
    else if (r.admissibility_witness) out["admissibility_witness"] = subspace_to_json(*r.admissibility_witness);
    else out["admissibility_witness"] = nullptr;
    out["etale"] = out["weakly_admissible"];
    out["crystalline"] = r.crystalline;
    out["plus_de_rham"] = r.plus_de_rham;
    if (!r.triangulordinary) {
        out["ordinary"] = unknown;
        out["triangulordinary"] = unknown;
    } else {
        out["ordinary"] = r.ordinary ? verdict_to_json(*r.ordinary) : Json(nullptr);
        Json list = Json::array();
        for (const auto& v : *r.triangulordinary) list.push_back(verdict_to_json(v));
        out["triangulordinary"] = std::move(list);
    }
    out["trianguline"] = r.trianguline ? Json{{"value", r.trianguline->value}, {"refinements", r.trianguline->refinements}}
                                       : unknown;
    out["bloch_kato_f_equals_g"] = r.bloch_kato_f_equals_g;
    out["complete"] = r.complete;
    out["notes"] = r.notes;
    out["warnings"] = r.warnings;
    return out;
}

namespace {

std::string flat(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + flat(j[i]);
        return out;
    }
    return j.dump();
}

std::string slopes_text(const Json& s) {
    if (!s.is_array()) return flat(s);
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? ", " : "") + s[i]["slope"].get<std::string>() + " (x" + s[i]["multiplicity"].dump() + ")";
    return out.empty() ? "none" : out;
}

void verdict_text(std::ostringstream& os, const Json& v, const std::string& indent) {
    std::string dims;
    for (std::size_t i = 0; i < v["flag"].size(); ++i)
        dims += (i ? " > " : "") + std::to_string(v["flag"][i].size());
    os << indent << "flag dims " << dims << "; weights " << flat(v["weights"]) << "\n";
    os << indent << "graded slopes:";
    for (const auto& g : v["graded_slopes"]) os << " [" << slopes_text(g) << "]";
    os << "\n" << indent << "ordinary " << v["is_ordinary"].dump() << "; slope hypothesis "
       << v["slope_hypothesis"].dump() << "; theorem applies " << v["theorem_applies"].dump();
    if (!v["offending_gradeds"].empty()) os << "; offending weights " << flat(v["offending_gradeds"]);
    os << "\n";
}

}  // namespace

std::string render_text(const Json& r) {
    std::ostringstream os;
    os << "module: dimension " << r["dimension"].dump() << " over " << r["coefficient_field"].get<std::string>()
       << "\n";
    os << "slopes: " << slopes_text(r["slopes"]) << "\n";
    os << "Hodge-Tate weights: " << flat(r["hodge_tate_weights"]) << "\n";
    os << "semistable: " << r["semistable"].dump() << "\n";
    os << "weakly admissible (etale): " << flat(r["weakly_admissible"]) << "\n";
    if (!r["admissibility_witness"].is_null())
        os << "  witness: " << r["admissibility_witness"].dump() << "\n";
    os << "crystalline: " << r["crystalline"].dump() << "\n";
    os << "+de Rham: " << r["plus_de_rham"].dump() << "\n";
    const Json& tord = r["triangulordinary"];
    if (tord.is_array()) {
        os << "triangulordinary filtrations: " << tord.size() << "\n";
        for (std::size_t i = 0; i < tord.size(); ++i) {
            os << "  [" << i << "]\n";
            verdict_text(os, tord[i], "    ");
        }
        os << "ordinary: " << (r["ordinary"].is_null() ? "no" : "yes") << "\n";
    } else {
        os << "triangulordinary filtrations: " << flat(tord) << "\n";
        os << "ordinary: " << flat(r["ordinary"]) << "\n";
    }
    const Json& tri = r["trianguline"];
    if (tri.is_object())
        os << "trianguline: " << tri["value"].dump() << " (" << tri["refinements"].dump() << " refinements)\n";
    else
        os << "trianguline: " << flat(tri) << "\n";
    os << "Bloch-Kato f = g: " << r["bloch_kato_f_equals_g"].dump() << "\n";
    for (const auto& n : r["notes"]) os << "note: " << n.get<std::string>() << "\n";
    for (const auto& w : r["warnings"]) os << "warning: " << w.get<std::string>() << "\n";
    return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

void match_into(const Json& expected, const Json& actual, const std::string& path, std::vector<Mismatch>& out) {
    if (expected.is_object()) {
        if (!actual.is_object()) {
            out.push_back({path, expected.dump(), actual.dump()});
            return;
        }
        for (const auto& [key, value] : expected.items()) {
            if (key == "annotations") continue;
            const std::string sub = path + "." + key;
            const auto it = actual.find(key);
            if (it == actual.end()) out.push_back({sub, value.dump(), "<missing>"});
            else match_into(value, *it, sub, out);
        }
        return;
    }
    if (expected.is_array()) {
        if (!actual.is_array() || actual.size() != expected.size()) {
            out.push_back({path, expected.dump(), actual.dump()});
            return;
        }
        for (std::size_t i = 0; i < expected.size(); ++i)
            match_into(expected[i], actual[i], path + "[" + std::to_string(i) + "]", out);
        return;
    }
    if (expected != actual) out.push_back({path, expected.dump(), actual.dump()});
}

}  // namespace

std::vector<Mismatch> partial_match(const Json& expected, const Json& actual) {
    std::vector<Mismatch> out;
    match_into(expected, actual, "$", out);
    return out;
}

}  // namespace tord
