#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "morrey/cli/commands.hpp"
#include "morrey/cli/report_io.hpp"

int main(int argc, char** argv) {
    using namespace morrey::cli;
    CLI::App app{"Weighted Morrey norms, A_p / A_{p,lambda} functionals and Hilbert-transform experiments"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    const std::map<std::string, std::string> about{
        {"norm", "weighted Morrey norm of a ball indicator or a step function"},
        {"sweep", "operator-norm lower bounds of the Hilbert transform over a nu grid"},
        {"admissible", "admissibility of a weight on a probe ball"},
        {"apconst", "A_p constant over a ball family"},
        {"aplconst", "A_{p,lambda} constant over a ball family"},
        {"necessity", "A_{p,lambda} functional on intervals of length <= 1 against 2k"},
        {"expfit", "log-log fit of the indicator norm against the ball measure"}};

    RunOptions opt;
    for (const std::string& name : command_names()) {
        const auto it = about.find(name);
        CLI::App* sub = app.add_subcommand(name, it == about.end() ? std::string() : it->second);
        sub->add_option("--config", opt.config_file, "JSON experiment file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
        sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
        sub->add_option("--seed", opt.seed, "accepted for scripting; no computation is randomized");
        sub->callback([&opt, name] { opt.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kValidation;
    }
    return run(opt, std::cout, std::cerr);
}
