#include "dsi/obstructions.hpp"

namespace dsi {

namespace {

// Column data of the Cech differential in one torus weight: s0 - s1 on the overlap monomial z^a.
struct WeightColumn {
    int a = 0;                 // overlap exponent
    std::optional<int> u0, u1;  // chart exponents of z and w meeting it
};

WeightColumn column_at(const LineBundle& l, int weight) {
    WeightColumn col;
    col.a = weight - l.mu;
    if (col.a >= 0) col.u0 = col.a;
    if (l.e - col.a >= 0) col.u1 = l.e - col.a;
    return col;
}

CosimplicialDiagram line_bundle_diagram(const LineBundle& l, int window) {
    const int wide = window + std::abs(l.e) + std::abs(l.mu);
    auto u0 = Algebra::make({{"z", 1, false}}, {});
    auto u1 = Algebra::make({{"w", -1, true}}, {});
    auto u01 = Algebra::make({{"z", 1, true}}, {});
    CosimplicialDiagram v;
    SliceOptions s1, s01;
    s1.laurent_window["w"] = {0, wide};
    s01.laurent_window["z"] = {-wide, wide};
    v.levels.push_back({DiagramComponent{"U0", u0, std::nullopt, {}, l.mu},
                        DiagramComponent{"U1", u1, std::nullopt, s1, l.mu + l.e}});
    v.levels.push_back({DiagramComponent{"U01", u01, std::nullopt, s01, l.mu}});
    AlgebraMap from_u0(u0, u01);
    from_u0.set("z", Element::slot(u01, "z"));
    AlgebraMap from_u1(u1, u01);
    from_u1.set("w", Element::slot(u01, "z", -1));
    v.cofaces.resize(2);
    v.cofaces[1].push_back({ComponentMap{1, from_u1, Element::slot(u01, "z", l.e).scaled(l.c)}});
    v.cofaces[1].push_back({ComponentMap{0, from_u0, Element::constant(u01, 1)}});
    return v;
}

bool is_zero(const TwElement& x) {
    for (const auto& level : x.levels)
        for (const auto& e : level)
            if (!e.is_zero()) return false;
    return true;
}

// [d_TW, op] = 0 on the conormal-degree-c parts of TW slices in a small weight range.
bool certify_cocycle(const ChartCover& cover, const LinftyStructure& l, int r, int c) {
    const TwModel model(cover.sheaf.diagram);
    for (int w = -1; w <= 1; ++w) {
        const TwSlice slice = tw(model, w, 2);
        for (int deg : {0, 1}) {
            const std::size_t n = slice.complex.dim(deg);
            for (std::size_t j = 0; j < n; ++j) {
                Vec e = zero_vec(n);
                e[j] = 1;
                const TwElement x = conormal_part(slice.element(model, deg, e), c);
                const TwElement y = model.add(model.differential(l.q(model, cover.sheaf, r, x)),
                                              l.q(model, cover.sheaf, r, model.differential(x)));
                if (!is_zero(y)) return false;
            }
        }
    }
    return true;
}

Element monomial_sum(const AlgebraPtr& alg, const std::string& x, const Laurent& coeffs, const std::string& n, int k) {
    Element out(alg);
    for (const auto& [a, c] : coeffs) out += (Element::slot(alg, x, a) * Element::slot(alg, n, k)).scaled(c);
    return out;
}

Derivation on_overlap(const ChartCover& cover, const Derivation& h0) {
    const auto& u01 = cover.sheaf.u01();
    Derivation out(u01, 0);
    for (const char* g : {"z", "n0"}) out.set(g, transfer(*h0.image(*h0.algebra()->slot(g)), u01));
    return out;
}

// Agreement of (id + h) with an algebra map modulo conormal degree `top` on products of samples.
bool multiplicative(const TruncatedNormalSheaf& s, const Derivation& h, const std::vector<Element>& samples, int top) {
    auto cut = [&](const Element& x) {
        TruncatedNormalSheaf t = s;
        t.order = top;
        return t.truncate(x);
    };
    auto lift = [&](const Element& x) { return cut(x + h.apply(x)); };
    for (const auto& x : samples)
        for (const auto& y : samples)
            if (!(lift(x * y) == cut(lift(x) * lift(y)))) return false;
    return true;
}

std::string power_name(const std::string& base, int k) {
    return k == 1 ? base : "S^" + std::to_string(k) + " " + base;
}

// Shared tail of both obstruction steps: class, solve, lift, gauge.
ClassReport finish(const ChartCover& cover, const FilteredAutomorphism& phi, const LinftyStructure& l, ClassReport r,
                   const LineBundle& source, const LineBundle& target, const Laurent& cochain, int window, bool anchor,
                   std::optional<Lift>* lift) {
    const auto& s = cover.sheaf;
    const ExtReport ext = cech_ext(source, target, window);
    const LineBundle hom = source.dual().tensor(target);
    r.ext0 = ext.ext0;
    r.ext1 = ext.ext1;
    r.stabilized = ext.stabilized;
    r.tw_ext1 = tw_ext1(source, target, std::min(window, 4));
    if (!r.stabilized) r.notes.push_back("Ext window did not stabilize");

    const auto sol = solve_coboundary(hom, cochain);
    r.vanishes = sol.has_value();
    if (!sol) return r;

    // h0 on U0 and h1 on U1 move the generator the class lives on; n-degree `k` of the frame
    const int k = anchor ? r.k + 1 : r.k;
    Derivation h0(s.u0(), 0), h1(s.u1(), 0);
    h0.set("z", Element(s.u0())).set("n0", Element(s.u0()));
    h1.set("w", Element(s.u1())).set("n1", Element(s.u1()));
    if (anchor) {
        h0.set("z", monomial_sum(s.u0(), "z", sol->first, "n0", k));
        h1.set("w", monomial_sum(s.u1(), "w", sol->second, "n1", k));
    } else {
        h0.set("n0", monomial_sum(s.u0(), "z", sol->first, "n0", k));
        h1.set("n1", monomial_sum(s.u1(), "w", sol->second, "n1", k));
    }
    r.lift_built = true;

    // the lift is an algebra map modulo conormal degree k + 1, and it glues through phi
    const int top = k;  // highest conormal degree kept
    const auto& u01 = s.u01();
    std::vector<Element> s0, s1;
    for (int a = 0; a <= 3; ++a) {
        s0.push_back(Element::slot(s.u0(), "z", a));
        s1.push_back(Element::slot(s.u1(), "w", a));
        if (!anchor) {
            s0.push_back(Element::slot(s.u0(), "z", a) * Element::slot(s.u0(), "n0"));
            s1.push_back(Element::slot(s.u1(), "w", a) * Element::slot(s.u1(), "n1"));
        }
    }
    const Derivation h0o = on_overlap(cover, h0), h1o = cover.from_u1(h1);
    TruncatedNormalSheaf cut = s;
    cut.order = top;
    bool glues = true;
    std::vector<Element> gens{Element::slot(u01, "z"), Element::slot(u01, "z", -1)};
    if (!anchor) gens.push_back(Element::slot(u01, "n0"));
    for (const auto& x : gens) {
        const Element lhs = cut.truncate(phi.apply(x + h1o.apply(x)));
        const Element rhs = cut.truncate(x + h0o.apply(x));
        if (!(lhs == rhs)) {
            glues = false;
            r.notes.push_back("lift does not glue on " + x.str());
        }
    }
    r.lift_verified = glues && multiplicative(s, h0, s0, top) && multiplicative(s, h1, s1, top);

    // gauge: exp(-h0) phi exp(h1), the same as the Cech gauge action on the log
    const FilteredAutomorphism gauged =
        FilteredAutomorphism::exp(s, h0o.scaled(-1)).after(phi).after(FilteredAutomorphism::exp(s, h1o));
    const auto& lie = cover.action.lie;
    if (auto cls = lie.g01.nilpotency_class(); cls && *cls <= 4) {
        auto a0 = derivation_coords(cover.der0, h0), a1 = derivation_coords(cover.der1, h1);
        Vec neg0 = *a0, neg1 = *a1;
        for (auto& v : neg0) v = -v;
        for (auto& v : neg1) v = -v;
        if (gauge_cocycle(lie, neg0, neg1, l.theta) != *derivation_coords(cover.der01, log_cocycle(gauged)))
            r.notes.push_back("composed gauge differs from the Cech gauge action");
    }
    if (lift) *lift = Lift{h0, h1, gauged};
    return r;
}

}  // namespace

ExtReport cech_ext(const LineBundle& f, const LineBundle& g, int window) {
    ExtReport r;
    r.hom = f.dual().tensor(g);
    r.window = window;
    for (int w = -window; w <= window; ++w) {
        const WeightColumn col = column_at(r.hom, w);
        std::vector<Vec> cols;
        if (col.u0) cols.push_back(Vec{Rational(1)});
        if (col.u1) cols.push_back(Vec{-r.hom.c});
        const RatMatrix m = RatMatrix::from_columns(1, cols);
        const std::size_t h0 = rank_kernel(m).kernel.size();
        const std::size_t h1 = 1 - (cols.size() - h0);
        if (h0 == 0 && h1 == 0) continue;
        r.weights.push_back({w, h0, h1});
        r.ext0 += h0;
        r.ext1 += h1;
        if (w == -window || w == window) r.stabilized = false;
    }
    // the nonzero weights sit next to the frame weight, which must lie inside the window
    if (std::abs(r.hom.mu) >= window) r.stabilized = false;
    return r;
}

std::size_t tw_ext1(const LineBundle& f, const LineBundle& g, int window) {
    const LineBundle hom = f.dual().tensor(g);
    const TwModel model(line_bundle_diagram(hom, window));
    std::size_t total = 0;
    for (int w = -window; w <= window; ++w) total += cohomology(tw(model, w, 2).complex, false).dim(1);
    return total;
}

std::optional<std::pair<Laurent, Laurent>> solve_coboundary(const LineBundle& hom, const Laurent& cochain) {
    std::vector<int> rows;
    for (const auto& [a, c] : cochain)
        if (c != 0) rows.push_back(a);
    if (rows.empty()) return std::pair<Laurent, Laurent>{};
    // unknowns: z^a on U0 and w^b on U1 for every overlap exponent met
    std::vector<std::pair<int, int>> unknowns;  // (chart, exponent)
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int a = rows[i];
        if (a >= 0) {
            unknowns.emplace_back(0, a);
            Vec v = zero_vec(rows.size());
            v[i] = 1;
            cols.push_back(v);
        }
        if (hom.e - a >= 0) {
            unknowns.emplace_back(1, hom.e - a);
            Vec v = zero_vec(rows.size());
            v[i] = -hom.c;
            cols.push_back(v);
        }
    }
    Vec b = zero_vec(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) b[i] = cochain.at(rows[i]);
    if (cols.empty()) return std::nullopt;
    const auto x = solve(RatMatrix::from_columns(rows.size(), cols), b);
    if (!x) return std::nullopt;
    std::pair<Laurent, Laurent> out;
    for (std::size_t j = 0; j < unknowns.size(); ++j)
        if ((*x)[j] != 0) (unknowns[j].first == 0 ? out.first : out.second)[unknowns[j].second] = (*x)[j];
    return out;
}

ClassReport splitting_obstruction(const ChartCover& cover, const FilteredAutomorphism& phi, int k, int window,
                                  std::optional<Lift>* lift) {
    if (lift) lift->reset();
    ClassReport r;
    r.k = k;
    r.name = "a" + std::to_string(k + 1);
    r.group = "Ext1(" + power_name("N", k + 1) + ", T_X)";
    if (k < 0 || k >= cover.order()) throw std::invalid_argument("splitting step outside the truncation order");
    const LinftyStructure l = linfty_from_cocycle(cover, phi);
    for (int i = 0; i <= k; ++i)
        if (!l.anchor_zero(i)) {
            r.notes.push_back("precondition fails: a" + std::to_string(i) + " != 0");
            return r;
        }
    r.precondition = true;
    r.cocycle = certify_cocycle(cover, l, k + 1, 0);
    const LineBundle source = cover.normal().power(k + 1);
    return finish(cover, phi, l, r, source, cover.tangent(), l.anchor_cochain(k + 1), window, true, lift);
}

ClassReport linearization_obstruction(const ChartCover& cover, const FilteredAutomorphism& phi, int k, int window,
                                      std::optional<Lift>* lift) {
    if (lift) lift->reset();
    ClassReport r;
    r.k = k;
    r.name = "l" + std::to_string(k);
    r.group = "Ext1(" + power_name("N", k) + ", N)";
    if (k < 2 || k > cover.order()) throw std::invalid_argument("linearization step outside the truncation order");
    const LinftyStructure l = linfty_from_cocycle(cover, phi);
    for (int i = 0; i <= k && i <= cover.order(); ++i)
        if (!l.anchor_zero(i)) {
            r.notes.push_back("precondition fails: a" + std::to_string(i) + " != 0");
            return r;
        }
    for (int i = 0; i < k; ++i)
        if (!l.bracket_zero(i)) {
            r.notes.push_back("precondition fails: l" + std::to_string(i) + " != 0");
            return r;
        }
    r.precondition = true;
    r.cocycle = certify_cocycle(cover, l, k - 1, 1);
    const LineBundle source = cover.normal().power(k);
    return finish(cover, phi, l, r, source, cover.normal(), l.bracket_cochain(k), window, false, lift);
}

bool ObstructionReport::split() const {
    if (!cocycle.ok()) return false;
    for (const auto& c : splitting)
        if (c.vanishes != std::optional<bool>(true)) return false;
    return true;
}

bool ObstructionReport::linearized() const {
    if (!split()) return false;
    for (const auto& c : linearization)
        if (c.vanishes != std::optional<bool>(true)) return false;
    return true;
}

bool ObstructionReport::relations_ok() const {
    for (const auto& r : relations)
        if (!r.ok()) return false;
    return !relations.empty();
}

ObstructionReport obstruct(const ChartCover& cover, const FilteredAutomorphism& phi01, const FilteredAutomorphism& phi10,
                           int window, int p_max) {
    ObstructionReport out;
    out.cocycle = verify_cocycle(cover, phi01, phi10);
    if (!out.cocycle.ok()) return out;
    FilteredAutomorphism cur = phi01;
    auto relations = [&] { out.relations.push_back(check_relations(cover, linfty_from_cocycle(cover, cur), 1, p_max)); };
    relations();
    for (int k = 0; k < cover.order(); ++k) {
        std::optional<Lift> lift;
        out.splitting.push_back(splitting_obstruction(cover, cur, k, window, &lift));
        if (lift) {
            cur = lift->gauged;
            relations();
        }
    }
    for (int k = 2; k <= cover.order(); ++k) {
        std::optional<Lift> lift;
        out.linearization.push_back(linearization_obstruction(cover, cur, k, window, &lift));
        if (lift) {
            cur = lift->gauged;
            relations();
        }
    }
    return out;
}

}  // namespace dsi
