#include "tord/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tord/classify.hpp"
#include "tord/corpus.hpp"
#include "tord/document.hpp"

namespace tord::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

/// Reports a load failure in the requested format; returns the exit code.
int report_failure(const std::exception& e, const Options& opts, std::ostream& out, std::ostream& err) {
    Json doc;
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
        Json list = Json::array();
        for (const auto& x : v->violations()) {
            list.push_back({{"code", x.code}, {"message", x.message}, {"witness", x.witness}});
            err << x.code << ": " << x.message << "\n";
        }
        doc = {{"error", "VALIDATION"}, {"violations", std::move(list)}};
    } else {
        const auto* t = dynamic_cast<const Error*>(&e);
        const std::string code = t ? std::string(to_string(t->code())) : "INTERNAL";
        err << code << ": " << e.what() << "\n";
        doc = {{"error", code}, {"message", e.what()}};
    }
    if (opts.format == "json") out << dump(doc);
    return kInvalid;
}

FilteredPhiNModule load(const std::string& path) { return module_from_text(read_file(path)); }

Json classify_json(const FilteredPhiNModule& d, const Options& opts) {
    return report_to_json(classify(d, ClassifyOptions{opts.threads, opts.max_dim}));
}

}  // namespace

std::string corpus_stem(const std::string& name) {
    std::string out;
    for (char c : name) out += (c == ':' || c == '=' || c == '/') ? '_' : c;
    return out;
}

int run_classify(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err) {
    std::optional<FilteredPhiNModule> d;
    try {
        d = load(path);
    } catch (const std::exception& e) {
        return report_failure(e, opts, out, err);
    }
    const Json report = classify_json(*d, opts);
    out << (opts.format == "text" ? render_text(report) : dump(report));
    return report["complete"].get<bool>() ? kOk : kIncomplete;
}

int run_corpus_list(std::ostream& out) {
    for (const auto& n : corpus_names()) out << n << "\n";
    return kOk;
}

int run_corpus(const std::string& name, const std::string& out_dir, const Options& opts, std::ostream& out,
               std::ostream& err) {
    std::optional<CorpusEntry> entry;
    try {
        entry = corpus_entry(name);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    Json golden = classify_json(entry->module, opts);
    Json ann = entry->annotations;
    ann["expected"] = entry->expected;
    golden["annotations"] = std::move(ann);

    const std::filesystem::path dir(out_dir);
    const std::string stem = corpus_stem(name);
    try {
        std::filesystem::create_directories(dir);
        write_file(dir / (stem + ".module.json"), dump(module_to_json(entry->module)));
        write_file(dir / (stem + ".golden.json"), dump(golden));
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kInvalid;
    }
    out << (dir / (stem + ".module.json")).string() << "\n" << (dir / (stem + ".golden.json")).string() << "\n";
    return golden["complete"].get<bool>() ? kOk : kIncomplete;
}

int run_assert(const std::string& module_path, const std::string& expected_path, const Options& opts,
               std::ostream& out, std::ostream& err) {
    std::optional<FilteredPhiNModule> d;
    Json expected;
    try {
        d = load(module_path);
        try {
            expected = Json::parse(read_file(expected_path));
        } catch (const Json::parse_error& e) {
            throw Error(ErrorCode::Syntax, std::string("expectations are not valid JSON: ") + e.what());
        }
    } catch (const std::exception& e) {
        return report_failure(e, opts, out, err);
    }
    const auto diffs = partial_match(expected, classify_json(*d, opts));
    for (const auto& m : diffs) out << m.path << ": expected " << m.expected << ", got " << m.actual << "\n";
    if (!diffs.empty()) {
        err << diffs.size() << " field(s) differ\n";
        return kMismatch;
    }
    out << "all expected fields match\n";
    return kOk;
}

int run_enumerate(const std::string& path, const std::string& what, const Options& opts, std::ostream& out,
                  std::ostream& err) {
    std::optional<FilteredPhiNModule> d;
    try {
        d = load(path);
    } catch (const std::exception& e) {
        return report_failure(e, opts, out, err);
    }
    if (d->dim() > opts.max_dim) {
        err << "ENUM_INFEASIBLE: dimension " << d->dim() << " exceeds the enumeration guard " << opts.max_dim << "\n";
        return kIncomplete;
    }
    try {
        Json list = Json::array();
        std::ostringstream text;
        if (what == "flags") {
            for (const auto& f : stable_flags(*d, std::nullopt, ExecOptions{opts.threads})) {
                Json chain = Json::array();
                for (const auto& s : f.chain()) chain.push_back(subspace_to_json(s));
                text << "flag of length " << f.length() << ":";
                for (const auto& s : f.chain()) text << " " << s.dim();
                text << "\n";
                list.push_back(std::move(chain));
            }
        } else {
            for (const auto& s : stable_subspaces(*d)) {
                text << "dim " << s.dim() << ": " << subspace_to_json(s).dump() << "\n";
                list.push_back(subspace_to_json(s));
            }
        }
        out << (opts.format == "text" ? text.str() : dump(list));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EnumInfeasible) throw;
        err << "ENUM_INFEASIBLE: " << e.what() << "\n";
        return kIncomplete;
    }
    return kOk;
}

}  // namespace tord::cli
