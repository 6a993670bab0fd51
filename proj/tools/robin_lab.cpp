#include "robin/cli/run.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Robin problem experiments: solves, stability sweeps, convergence studies, level-set diagnostics"};
    app.set_version_flag("--version", robin::cli::tool_version);

    std::string experiment;
    std::string config;
    std::optional<std::string> output;
    unsigned threads = 1;
    app.add_option("experiment", experiment, "solve | stability | convergence | stampacchia | theorem0")
        ->required();
    app.add_option("--config", config, "Path to the JSON run configuration")->required();
    app.add_option("--output", output, "Output directory (overrides output_dir in the config)");
    app.add_option("--threads", threads, "Worker threads for per-beta solves")->check(CLI::Range(1u, 256u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : robin::cli::exit_invalid_config;
    }
    return robin::cli::run_command(experiment, config, output, threads, std::cout, std::cerr);
}
