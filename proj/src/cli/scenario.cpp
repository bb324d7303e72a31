#include "dsi/cli.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace dsi::cli {

namespace {

std::string position(int line, int column, const std::string& file) {
    std::string out = file.empty() ? "" : file + ":";
    if (line > 0) out += std::to_string(line) + ":" + std::to_string(column) + ":";
    return out.empty() ? out : out + " ";
}

}  // namespace

ScenarioError::ScenarioError(int line, int column, const std::string& message, const std::string& file)
    : std::runtime_error(position(line, column, file) + message),
      line(line),
      column(column),
      message(message) {}

namespace {

struct Entry {
    Located key, value;
};

struct Section {
    Located header;
    std::vector<Entry> entries;
};

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Trim blanks, moving the column along with the left edge.
Located trimmed(std::string_view text, int line, int column) {
    std::size_t a = 0, b = text.size();
    while (a < b && blank(text[a])) ++a;
    while (b > a && blank(text[b - 1])) --b;
    return {std::string(text.substr(a, b - a)), line, column + static_cast<int>(a)};
}

[[noreturn]] void fail(const Located& at, const std::string& msg) { throw ScenarioError(at.line, at.column, msg); }

std::vector<Section> split_sections(std::string_view text) {
    std::vector<Section> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const Located body = trimmed(line, line_no, 1);
        if (body.text.empty()) continue;
        if (body.text.front() == '[') {
            if (body.text.back() != ']')
                throw ScenarioError(line_no, body.column + static_cast<int>(body.text.size()), "expected ']'");
            out.push_back({trimmed(std::string_view(body.text).substr(1, body.text.size() - 2), line_no, body.column + 1), {}});
            if (out.back().header.text.empty()) fail(body, "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(body, "expected 'key = value'");
        if (out.empty()) fail(body, "entry outside of any section");
        Entry e{trimmed(line.substr(0, eq), line_no, 1), trimmed(line.substr(eq + 1), line_no, static_cast<int>(eq) + 2)};
        if (e.key.text.empty()) fail(body, "missing key");
        if (e.value.text.empty()) throw ScenarioError(line_no, static_cast<int>(eq) + 2, "missing value for '" + e.key.text + "'");
        out.back().entries.push_back(std::move(e));
        if (end == text.size()) break;
    }
    return out;
}

// Split on commas outside parentheses and brackets.
std::vector<Located> split_list(const Located& v) {
    std::vector<Located> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= v.text.size(); ++i) {
        const char c = i < v.text.size() ? v.text[i] : ',';
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            Located item = trimmed(std::string_view(v.text).substr(start, i - start), v.line, v.column + static_cast<int>(start));
            if (item.text.empty()) fail(item, "empty list item");
            out.push_back(std::move(item));
            start = i + 1;
        }
    }
    return out;
}

int parse_int(const Located& v, int lo) {
    int out = 0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) fail(v, "expected an integer, found '" + v.text + "'");
    if (out < lo) fail(v, "value must be at least " + std::to_string(lo));
    return out;
}

bool valid_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

std::vector<Variable> parse_variables(const Located& v) {
    std::vector<Variable> out;
    std::set<std::string> seen;
    for (const Located& item : split_list(v)) {
        Variable var;
        const auto colon = item.text.find(':');
        var.name = trimmed(std::string_view(item.text).substr(0, colon), item.line, item.column).text;
        if (!valid_name(var.name)) fail(item, "bad variable name '" + var.name + "'");
        if (!seen.insert(var.name).second) fail(item, "variable '" + var.name + "' declared twice");
        if (colon != std::string::npos)
            var.weight = parse_int(trimmed(std::string_view(item.text).substr(colon + 1), item.line,
                                           item.column + static_cast<int>(colon) + 1),
                                   std::numeric_limits<int>::min());
        out.push_back(std::move(var));
    }
    return out;
}

BundleSpec parse_bundle_transition(const Located& v) {
    const std::string& t = v.text;
    if (t.size() < 4 || t.substr(0, 2) != "[[" || t.substr(t.size() - 2) != "]]")
        fail(v, "expected a 1x1 matrix [[c*z^e]]");
    const Located inner = trimmed(std::string_view(t).substr(2, t.size() - 4), v.line, v.column + 2);
    if (inner.text.find_first_of("[],") != std::string::npos) fail(inner, "only rank-1 transitions are supported");
    const auto laurent = Algebra::make({{"z", 1, true}}, {});
    const Element x = parse_value(laurent, inner);
    if (x.terms().size() != 1) fail(inner, "transition entry must be a single monomial c*z^e");
    const auto& [m, c] = *x.terms().begin();
    BundleSpec b;
    b.c = c;
    b.e = m[0];
    b.source = v;
    return b;
}

using Handler = std::function<void(const Entry&)>;

void dispatch(const Section& s, const std::map<std::string, Handler>& handlers) {
    std::set<std::string> seen;
    for (const Entry& e : s.entries) {
        auto it = handlers.find(e.key.text);
        if (it == handlers.end()) fail(e.key, "unknown key '" + e.key.text + "' in [" + s.header.text + "]");
        if (!seen.insert(e.key.text).second) fail(e.key, "duplicate key '" + e.key.text + "'");
        it->second(e);
    }
}

const Entry* find(const Section& s, const std::string& key) {
    for (const Entry& e : s.entries)
        if (e.key.text == key) return &e;
    return nullptr;
}

}  // namespace

Element parse_value(const AlgebraPtr& alg, const Located& v) {
    try {
        return parse_element(alg, v.text);
    } catch (const ParseError& e) {
        throw ScenarioError(v.line, v.column + static_cast<int>(e.column) - 1, e.what());
    }
}

Scenario parse_scenario(std::string_view text, std::string name) {
    Scenario out;
    out.name = std::move(name);
    std::set<std::string> seen;
    const Section* embedding = nullptr;
    const Section* transition = nullptr;
    Located cover_at, transition_at;
    const auto sections = split_sections(text);

    for (const Section& s : sections) {
        const std::string& h = s.header.text;
        if (!seen.insert(h).second) fail(s.header, "duplicate section [" + h + "]");
        if (h == "embedding") {
            embedding = &s;
            dispatch(s, {{"variables", [](const Entry&) {}}, {"section", [](const Entry&) {}}});
        } else if (h == "options") {
            auto opt = [&](std::optional<int>& slot, int lo) { return [&slot, lo](const Entry& e) { slot = parse_int(e.value, lo); }; };
            dispatch(s, {{"wmax", opt(out.options.wmax, 0)},
                         {"k", opt(out.options.k, 0)},
                         {"order", opt(out.options.order, 0)},
                         {"window", opt(out.options.window, 0)},
                         {"nerve_depth", opt(out.options.nerve_depth, 1)},
                         {"pmax", opt(out.options.pmax, 0)}});
        } else if (h == "cover") {
            cover_at = s.header;
            dispatch(s, {{"type", [&](const Entry& e) {
                              if (e.value.text != "P1") fail(e.value, "unsupported cover '" + e.value.text + "', expected P1");
                              out.p1_cover = true;
                          }}});
            if (!out.p1_cover) fail(s.header, "missing key 'type'");
        } else if (h == "bundle.N" || h == "bundle.TX") {
            std::optional<BundleSpec> b;
            std::optional<int> weight;
            dispatch(s, {{"transition", [&](const Entry& e) { b = parse_bundle_transition(e.value); }},
                         {"conormal_weight", [&](const Entry& e) {
                              if (h != "bundle.N") fail(e.key, "conormal_weight only applies to [bundle.N]");
                              weight = parse_int(e.value, std::numeric_limits<int>::min());
                          }}});
            if (!b) fail(s.header, "missing key 'transition'");
            if (weight) b->conormal_weight = *weight;
            if (h == "bundle.N") {
                if (b->e < 1) fail(b->source, "normal bundle must have positive degree, found " + std::to_string(b->e));
                out.normal = b;
            } else {
                if (b->e != 2 || b->c != -1) fail(b->source, "tangent bundle of P1 has transition [[-z^2]] in these frames");
                out.tangent = b;
            }
        } else if (h == "transition") {
            transition = &s;
            transition_at = s.header;
            dispatch(s, {{"z", [](const Entry&) {}},
                         {"n0", [](const Entry&) {}},
                         {"inverse.z", [](const Entry&) {}},
                         {"inverse.n0", [](const Entry&) {}}});
        } else {
            fail(s.header, "unknown section [" + h + "]");
        }
    }

    if (embedding) {
        const Entry* vars = find(*embedding, "variables");
        const Entry* sec = find(*embedding, "section");
        if (!vars) fail(embedding->header, "missing key 'variables'");
        if (!sec) fail(embedding->header, "missing key 'section'");
        EmbeddingSpec e{parse_variables(vars->value), split_list(sec->value)};
        const auto base = Algebra::make(e.variables, {});
        for (const Located& item : e.section) parse_value(base, item);
        out.embedding = std::move(e);
    }

    if (out.normal && !out.p1_cover) fail(Located{"", 1, 1}, "[bundle.N] needs a [cover] section");
    if (out.tangent && !out.p1_cover) fail(Located{"", 1, 1}, "[bundle.TX] needs a [cover] section");
    if (transition) {
        if (!out.p1_cover || !out.normal) fail(transition_at, "[transition] needs [cover] and [bundle.N]");
        TransitionSpec t;
        const Entry* z = find(*transition, "z");
        const Entry* n0 = find(*transition, "n0");
        if (!z) fail(transition_at, "missing key 'z'");
        if (!n0) fail(transition_at, "missing key 'n0'");
        t.z = z->value;
        t.n0 = n0->value;
        const Entry* iz = find(*transition, "inverse.z");
        const Entry* in0 = find(*transition, "inverse.n0");
        if (static_cast<bool>(iz) != static_cast<bool>(in0))
            fail((iz ? iz : in0)->key, "give both inverse.z and inverse.n0 or neither");
        if (iz) {
            t.inverse_z = iz->value;
            t.inverse_n0 = in0->value;
        }
        // Syntax and names only; the truncated overlap algebra is built once the order is known.
        const auto overlap = Algebra::make({{"z", 1, true}, {"n0", out.normal->conormal_weight, false}}, {});
        for (const Located* v : {&t.z, &t.n0}) parse_value(overlap, *v);
        if (t.inverse_z) {
            parse_value(overlap, *t.inverse_z);
            parse_value(overlap, *t.inverse_n0);
        }
        out.transition = std::move(t);
    }
    return out;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError(0, 0, "cannot open scenario", path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str(), path.stem().string());
    } catch (const ScenarioError& e) {
        throw e.in_file(path.string());
    }
}

}  // namespace dsi::cli
