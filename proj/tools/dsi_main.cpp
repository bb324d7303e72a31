#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dsi/cli.hpp"

namespace cli = dsi::cli;

namespace {

struct Flags {
    std::string scenario;
    std::string report;
    cli::Settings settings;
};

void add_flags(CLI::App& sub, Flags& f) {
    sub.add_option("scenario", f.scenario, "Scenario file")->required();
    auto& o = f.settings.overrides;
    sub.add_option("--wmax", o.wmax, "Largest torus weight checked")->check(CLI::NonNegativeNumber);
    sub.add_option("--k", o.k, "Neighborhood or UEA order")->check(CLI::NonNegativeNumber);
    sub.add_option("--order", o.order, "Truncation order of the normal sheaf")->check(CLI::NonNegativeNumber);
    sub.add_option("--window", o.window, "Torus weight window on the cover")->check(CLI::NonNegativeNumber);
    sub.add_option("--nerve-depth", o.nerve_depth, "Depth of the constant nerve diagram")->check(CLI::PositiveNumber);
    sub.add_option("--pmax", o.pmax, "Polynomial degree bound for simplex forms")->check(CLI::NonNegativeNumber);
    sub.add_option("--jobs", f.settings.jobs, "Worker threads for independent checks")->check(CLI::PositiveNumber);
    sub.add_option("--report", f.report, "Also write the report to this path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checks for derived self-intersections and formal neighborhoods"};
    app.require_subcommand(1);
    Flags flags;
    for (const auto& name : cli::command_names()) add_flags(*app.add_subcommand(name), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_parse;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    cli::Scenario s;
    try {
        s = cli::load_scenario(flags.scenario);
    } catch (const cli::ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return cli::exit_parse;
    }
    try {
        const cli::Report r = cli::run_command(command, s, flags.settings);
        const std::string text = cli::print_report(r);
        std::cout << text;
        if (!flags.report.empty()) {
            std::ofstream out(flags.report, std::ios::binary);
            if (!out) {
                std::cerr << "dsi: cannot write " << flags.report << "\n";
                return cli::exit_fail;
            }
            out << text;
        }
        return r.status() == cli::Status::fail ? cli::exit_fail : cli::exit_pass;
    } catch (const cli::ScenarioError& e) {
        std::cerr << e.in_file(flags.scenario).what() << "\n";
        return cli::exit_parse;
    } catch (const std::exception& e) {
        std::cerr << "dsi: " << command << ": " << e.what() << "\n";
        return cli::exit_fail;
    }
}
