// Command-line driver: classify, corpus, assert, enumerate.

#include <iostream>

#include <CLI11.hpp>

#include "tord/cli.hpp"

int main(int argc, char** argv) {
    namespace cli = tord::cli;
    CLI::App app{"Classify filtered (phi,N)-modules"};
    app.require_subcommand(1);

    cli::Options opts;
    app.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--max-dim", opts.max_dim, "Refuse enumeration above this dimension");
    app.add_option("--threads", opts.threads, "Worker threads for enumeration")->check(CLI::Range(1u, 256u));

    std::string path, expected, name, out_dir = ".";
    auto* classify = app.add_subcommand("classify", "Classify a module document");
    classify->add_option("file", path)->required();

    auto* corpus = app.add_subcommand("corpus", "Write a corpus module and its golden report");
    corpus->add_option("name", name);
    corpus->add_option("--out", out_dir, "Output directory");
    bool list = false;
    corpus->add_flag("--list", list, "List available entries");

    auto* assert_cmd = app.add_subcommand("assert", "Compare a module's report with expected fields");
    assert_cmd->add_option("file", path)->required();
    assert_cmd->add_option("expected", expected)->required();

    auto* enumerate = app.add_subcommand("enumerate", "List (phi,N)-stable subspaces or flags");
    enumerate->add_option("file", path)->required();
    bool flags = false, subspaces = false;
    auto* flags_opt = enumerate->add_flag("--flags", flags, "List stable flags");
    enumerate->add_flag("--subspaces", subspaces, "List stable subspaces (default)")->excludes(flags_opt);

    for (auto* sub : {classify, corpus, assert_cmd, enumerate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kUsage;
    }

    try {
        if (*classify) return cli::run_classify(path, opts, std::cout, std::cerr);
        if (*corpus) {
            if (list) return cli::run_corpus_list(std::cout);
            if (name.empty()) {
                std::cerr << "corpus: give an entry name or --list\n";
                return cli::kUsage;
            }
            return cli::run_corpus(name, out_dir, opts, std::cout, std::cerr);
        }
        if (*assert_cmd) return cli::run_assert(path, expected, opts, std::cout, std::cerr);
        if (*enumerate) return cli::run_enumerate(path, flags ? "flags" : "subspaces", opts, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return cli::kInvalid;
    }
    return cli::kUsage;
}
