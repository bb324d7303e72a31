#include "dsi/thomwhitney.hpp"

namespace dsi {

Element apply_component_map(const ComponentMap& cm, const Element& x) {
    if (x.is_zero()) return Element(cm.map.target());
    Element y = cm.map.apply(x);
    return cm.factor.algebra() ? cm.factor * y : y;
}

namespace {

LevelElement apply_maps(const std::vector<ComponentMap>& maps, const LevelElement& x) {
    LevelElement out;
    out.reserve(maps.size());
    for (const auto& cm : maps) out.push_back(apply_component_map(cm, x.at(cm.source)));
    return out;
}

bool level_equal(const LevelElement& a, const LevelElement& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] - b[i]).is_zero()) return false;
    return true;
}

}  // namespace

LevelElement apply_coface(const CosimplicialDiagram& v, int n, int k, const LevelElement& x) {
    if (n < 1 || n > v.depth() || k < 0 || k > n) throw std::out_of_range("coface index out of range");
    return apply_maps(v.cofaces[n][k], x);
}

LevelElement apply_codegeneracy(const CosimplicialDiagram& v, int n, int k, const LevelElement& x) {
    if (!v.has_codegeneracies() || n < 0 || n >= v.depth() || k < 0 || k > n)
        throw std::out_of_range("codegeneracy index out of range");
    return apply_maps(v.codegeneracies[n][k], x);
}

LevelElement level_differential(const CosimplicialDiagram& v, int n, const LevelElement& x) {
    LevelElement out;
    for (std::size_t c = 0; c < v.levels[n].size(); ++c) {
        const auto& comp = v.levels[n][c];
        out.push_back(comp.differential && !x[c].is_zero() ? comp.differential->apply(x[c]) : Element(comp.algebra));
    }
    return out;
}

std::vector<std::string> check_cosimplicial(const CosimplicialDiagram& v, const std::vector<int>& weights) {
    std::vector<std::string> failures;
    const int depth = v.depth();
    auto basis_of = [&](int level, int w) {
        std::vector<LevelElement> out;
        const auto& comps = v.levels[level];
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (const auto& [deg, ms] : slice_monomials(*comps[c].algebra, w - comps[c].weight_offset, comps[c].slice))
                for (const auto& m : ms) {
                    LevelElement x;
                    for (const auto& comp : comps) x.emplace_back(comp.algebra);
                    x[c] = Element(comps[c].algebra, m);
                    out.push_back(std::move(x));
                }
        return out;
    };
    auto fail = [&](const std::string& what, int level, const LevelElement& x) {
        std::string s = what + " at level " + std::to_string(level) + " on";
        for (const auto& e : x)
            if (!e.is_zero()) s += " " + e.str();
        failures.push_back(std::move(s));
    };
    for (int w : weights)
        for (int n = 0; n <= depth; ++n)
            for (const auto& x : basis_of(n, w)) {
                for (int k = 0; n + 1 <= depth && k <= n + 1; ++k)
                    if (!level_equal(apply_coface(v, n + 1, k, level_differential(v, n, x)),
                                     level_differential(v, n + 1, apply_coface(v, n + 1, k, x))))
                        fail("coface " + std::to_string(k) + " does not commute with d", n, x);
                for (int j = 1; n + 2 <= depth && j <= n + 2; ++j)
                    for (int i = 0; i < j; ++i) {
                        auto lhs = apply_coface(v, n + 2, j, apply_coface(v, n + 1, i, x));
                        auto rhs = apply_coface(v, n + 2, i, apply_coface(v, n + 1, j - 1, x));
                        if (!level_equal(lhs, rhs))
                            fail("cofaces " + std::to_string(i) + "<" + std::to_string(j) + " do not commute", n, x);
                    }
                if (v.has_codegeneracies() && n + 1 <= depth)
                    for (int j = 0; j <= n; ++j)
                        for (int i : {j, j + 1})
                            if (!level_equal(apply_codegeneracy(v, n, j, apply_coface(v, n + 1, i, x)), x))
                                fail("codegeneracy " + std::to_string(j) + " does not split coface " + std::to_string(i), n, x);
            }
    return failures;
}

CosimplicialDiagram constant_diagram(const AlgebraPtr& a, const std::optional<Derivation>& q, int depth,
                                     const SliceOptions& slice) {
    if (depth < 0) throw std::invalid_argument("negative nerve depth");
    CosimplicialDiagram v;
    const ComponentMap id{0, AlgebraMap(a, a), Element::constant(a, 1)};
    for (int n = 0; n <= depth; ++n) {
        v.levels.push_back({DiagramComponent{"V", a, q, slice, 0}});
        v.cofaces.emplace_back();
        if (n > 0)
            for (int k = 0; k <= n; ++k) v.cofaces[n].push_back({id});
    }
    for (int n = 0; n < depth; ++n) {
        v.codegeneracies.emplace_back();
        for (int k = 0; k <= n; ++k) v.codegeneracies[n].push_back({id});
    }
    if (depth == 0) v.codegeneracies.clear();
    return v;
}

CosimplicialDiagram cech_line_bundle(int d, int window) {
    if (window < 0) throw std::invalid_argument("negative window");
    const int wide = window + std::abs(d);
    auto u0 = Algebra::make({{"z", 1, false}}, {});
    auto u1 = Algebra::make({{"w", -1, true}}, {});
    auto u01 = Algebra::make({{"z", 1, true}}, {});

    CosimplicialDiagram v;
    SliceOptions s1, s01;
    s1.laurent_window["w"] = {0, wide};
    s01.laurent_window["z"] = {-wide, wide};
    v.levels.push_back({DiagramComponent{"U0", u0, std::nullopt, {}, 0}, DiagramComponent{"U1", u1, std::nullopt, s1, d}});
    v.levels.push_back({DiagramComponent{"U01", u01, std::nullopt, s01, 0}});

    AlgebraMap from_u0(u0, u01);
    from_u0.set("z", Element::slot(u01, "z"));
    AlgebraMap from_u1(u1, u01);
    from_u1.set("w", Element::slot(u01, "z", -1));
    // (d^k c) on U01 restricts c from the chart left after deleting vertex k
    v.cofaces.resize(2);
    v.cofaces[1].push_back({ComponentMap{1, from_u1, Element::slot(u01, "z", d)}});
    v.cofaces[1].push_back({ComponentMap{0, from_u0, Element::constant(u01, 1)}});
    return v;
}

}  // namespace dsi
