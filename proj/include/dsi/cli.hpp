#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsi/gca.hpp"

namespace dsi::cli {

// ---- scenarios ----

struct ScenarioError : std::runtime_error {
    // line 0 means the error has no position
    ScenarioError(int line, int column, const std::string& message, const std::string& file = "");
    ScenarioError in_file(const std::string& file) const { return ScenarioError(line, column, message, file); }
    int line;
    int column;
    std::string message;
};

// A value together with where it starts in the scenario file.
struct Located {
    std::string text;
    int line = 0;
    int column = 0;
};

struct EmbeddingSpec {
    std::vector<Variable> variables;
    std::vector<Located> section;
};

// A rank-1 transition [[c z^e]]: the U1 frame is c z^e times the U0 frame.
struct BundleSpec {
    Rational c = 1;
    int e = 0;
    int conormal_weight = 0;
    Located source;
};

struct TransitionSpec {
    Located z, n0;
    std::optional<Located> inverse_z, inverse_n0;
};

struct Options {
    std::optional<int> wmax, k, order, window, nerve_depth, pmax;
};

struct Scenario {
    std::string name;
    std::optional<EmbeddingSpec> embedding;
    Options options;
    bool p1_cover = false;
    std::optional<BundleSpec> normal, tangent;
    std::optional<TransitionSpec> transition;
};

// Parse a scenario value against `alg`, reporting errors at their file position.
Element parse_value(const AlgebraPtr& alg, const Located& v);

Scenario parse_scenario(std::string_view text, std::string name = "scenario");
// Errors from files carry the path in front of line:column.
Scenario load_scenario(const std::filesystem::path& path);

// ---- reports ----

enum class Status { pass, fail, indeterminate };

std::string_view status_name(Status s);

struct Check {
    std::string name;
    Status status = Status::pass;
    std::string detail;
    bool operator==(const Check&) const = default;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    void row(std::vector<std::string> cells);
    bool operator==(const Table&) const = default;
};

struct Report {
    std::string command;
    std::string scenario;
    std::vector<Check> checks;
    std::vector<Table> tables;
    std::vector<std::string> verdicts;
    std::optional<long long> time_ms;

    Status status() const;  // fail if any check fails
    void check(std::string name, bool ok, std::string detail = "");
    void indeterminate(std::string name, std::string detail);
    Table& table(std::string name, std::vector<std::string> columns);
    void verdict(std::string line);
    bool operator==(const Report&) const = default;
};

struct ReportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Single-line text with bars replaced, safe inside a report field.
std::string field(std::string s);
std::string print_report(const Report& r, bool with_time = true);
Report parse_report(std::string_view text);

// ---- commands ----

struct Settings {
    Options overrides;  // command-line flags win over the scenario
    int jobs = 1;
};

const std::vector<std::string>& command_names();
// Throws ScenarioError when the scenario lacks what the command needs.
Report run_command(const std::string& command, const Scenario& s, const Settings& settings);

// Exit codes of the dsi binary.
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_parse = 2;

}  // namespace dsi::cli
