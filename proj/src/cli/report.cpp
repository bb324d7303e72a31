#include "dsi/cli.hpp"

#include <charconv>
#include <sstream>

namespace dsi::cli {

namespace {

constexpr std::string_view sep = " | ";

}  // namespace

// Fields are single-line and never contain a bar.
std::string field(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
        else if (c == '|') c = '/';
    return s;
}

namespace {

std::vector<std::string> split_fields(std::string_view s, std::size_t max_parts = 0) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto at = s.find(sep, start);
        if (at == std::string_view::npos || (max_parts && out.size() + 1 == max_parts)) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, at - start));
        start = at + sep.size();
    }
}

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? std::string(sep) : "") + xs[i];
    return out;
}

Status parse_status(const std::string& s, std::size_t line) {
    for (Status st : {Status::pass, Status::fail, Status::indeterminate})
        if (status_name(st) == s) return st;
    throw ReportError("line " + std::to_string(line) + ": unknown status '" + s + "'");
}

}  // namespace

std::string_view status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::indeterminate: return "indeterminate";
    }
    return "?";
}

Status Report::status() const {
    for (const auto& c : checks)
        if (c.status == Status::fail) return Status::fail;
    return Status::pass;
}

void Report::check(std::string name, bool ok, std::string detail) {
    checks.push_back({field(std::move(name)), ok ? Status::pass : Status::fail, field(std::move(detail))});
}

void Report::indeterminate(std::string name, std::string detail) {
    checks.push_back({field(std::move(name)), Status::indeterminate, field(std::move(detail))});
}

Table& Report::table(std::string name, std::vector<std::string> columns) {
    for (auto& c : columns) c = field(std::move(c));
    tables.push_back({field(std::move(name)), std::move(columns), {}});
    return tables.back();
}

void Table::row(std::vector<std::string> cells) {
    if (cells.size() != columns.size()) throw std::logic_error("row width differs from the columns of " + name);
    for (auto& c : cells) c = field(std::move(c));
    rows.push_back(std::move(cells));
}

void Report::verdict(std::string line) { verdicts.push_back(field(std::move(line))); }

std::string print_report(const Report& r, bool with_time) {
    std::ostringstream os;
    os << "dsi-report 1\n";
    os << "command: " << r.command << "\n";
    os << "scenario: " << r.scenario << "\n";
    os << "status: " << status_name(r.status()) << "\n";
    for (const auto& c : r.checks) os << "check: " << join({c.name, std::string(status_name(c.status)), c.detail}) << "\n";
    for (const auto& t : r.tables) {
        os << "table: " << t.name << "\n";
        os << "columns: " << join(t.columns) << "\n";
        for (const auto& row : t.rows) os << "row: " << join(row) << "\n";
        os << "end-table\n";
    }
    for (const auto& v : r.verdicts) os << "verdict: " << v << "\n";
    if (with_time && r.time_ms) os << "time_ms: " << *r.time_ms << "\n";
    return os.str();
}

Report parse_report(std::string_view text) {
    Report r;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    Table* open = nullptr;
    std::optional<Status> declared;
    auto value = [&](std::string_view prefix) -> std::optional<std::string> {
        if (line.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
        return line.substr(prefix.size());
    };
    auto bad = [&](const std::string& msg) { return ReportError("line " + std::to_string(n) + ": " + msg); };

    while (std::getline(in, line)) {
        ++n;
        if (n == 1) {
            if (line != "dsi-report 1") throw bad("expected 'dsi-report 1'");
            continue;
        }
        if (open) {
            if (line == "end-table") open = nullptr;
            else if (auto v = value("row: ")) {
                auto cells = split_fields(*v);
                if (cells.size() != open->columns.size()) throw bad("row width differs from the columns");
                open->rows.push_back(std::move(cells));
            } else if (auto v = value("columns: "); v && open->columns.empty()) open->columns = split_fields(*v);
            else throw bad("unexpected line inside a table");
            continue;
        }
        if (auto v = value("command: ")) r.command = *v;
        else if (auto v = value("scenario: ")) r.scenario = *v;
        else if (auto v = value("status: ")) declared = parse_status(*v, n);
        else if (auto v = value("check: ")) {
            auto parts = split_fields(*v, 3);
            if (parts.size() != 3) throw bad("check needs 'name | status | detail'");
            r.checks.push_back({parts[0], parse_status(parts[1], n), parts[2]});
        } else if (auto v = value("table: ")) {
            r.tables.push_back({*v, {}, {}});
            open = &r.tables.back();
        } else if (auto v = value("verdict: ")) r.verdicts.push_back(*v);
        else if (auto v = value("time_ms: ")) {
            long long ms = 0;
            auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), ms);
            if (ec != std::errc() || p != v->data() + v->size()) throw bad("bad time_ms");
            r.time_ms = ms;
        } else throw bad("unrecognized line '" + line + "'");
    }
    if (n == 0) throw ReportError("empty report");
    if (open) throw ReportError("unterminated table '" + open->name + "'");
    if (declared && *declared != r.status()) throw ReportError("status line disagrees with the checks");
    return r;
}

}  // namespace dsi::cli
