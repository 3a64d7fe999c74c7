#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace tord::cli {

enum Exit : int {
    kOk = 0,
    kUsage = 1,
    kInvalid = 2,     // I/O, parse or validation failure
    kIncomplete = 3,  // enumeration refused or infeasible; partial output
    kMismatch = 4,    // assert found differences
};

struct Options {
    std::string format = "json";  // json | text
    std::size_t max_dim = 12;
    unsigned threads = 1;
};

int run_classify(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err);
/// Writes <stem>.module.json and <stem>.golden.json into out_dir.
int run_corpus(const std::string& name, const std::string& out_dir, const Options& opts, std::ostream& out,
               std::ostream& err);
int run_corpus_list(std::ostream& out);
int run_assert(const std::string& module_path, const std::string& expected_path, const Options& opts,
               std::ostream& out, std::ostream& err);
/// what: "subspaces" or "flags".
int run_enumerate(const std::string& path, const std::string& what, const Options& opts, std::ostream& out,
                  std::ostream& err);

/// File stem used by run_corpus, e.g. "cyclotomic_n_1_hom".
std::string corpus_stem(const std::string& name);

}  // namespace tord::cli
