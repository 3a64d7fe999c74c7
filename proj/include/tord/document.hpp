#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tord/classify.hpp"
#include "tord/phimod.hpp"

namespace tord {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Module documents

/// Reads the document shape into raw module data. Shape and literal errors
/// throw Error(Syntax); invariants are left to validate_module.
RawModule raw_module_from_json(const Json& doc);
/// Parses text and validates; throws Error or ValidationError.
FilteredPhiNModule module_from_text(const std::string& text);
/// Canonical document: every field present, Hodge bases in echelon form.
Json module_to_json(const FilteredPhiNModule& d);

// ---------------------------------------------------------------------------
// Reports

Json scalar_rows_to_json(const MatrixE& m);
Json subspace_to_json(const Subspace& s);
Json slopes_to_json(const SlopeMultiset& s);
Json verdict_to_json(const FiltrationVerdict& v);
/// Unknown fields carry the string "unknown".
Json report_to_json(const ClassificationReport& r);
/// Human-readable rendering, computed from the JSON report alone.
std::string render_text(const Json& report);

/// Indented dump with a trailing newline; byte-stable for equal values.
std::string dump(const Json& j);

// ---------------------------------------------------------------------------
// Partial matching

struct Mismatch {
    std::string path;
    std::string expected;
    std::string actual;
};

/// Objects match key by key over the expected keys (the key "annotations"
/// is skipped), arrays need equal length and matching elements, and
/// anything else must be equal.
std::vector<Mismatch> partial_match(const Json& expected, const Json& actual);

}  // namespace tord
