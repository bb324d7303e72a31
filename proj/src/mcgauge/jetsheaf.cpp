#include "dsi/mcgauge.hpp"

namespace dsi {

Element TruncatedNormalSheaf::truncate(const Element& x) const {
    const auto& alg = *x.algebra();
    std::vector<std::size_t> normal;
    for (const char* name : {"n0", "n1"})
        if (auto s = alg.slot(name)) normal.push_back(*s);
    return x.filtered([&](const Monomial& m) {
        int deg = 0;
        for (auto s : normal) deg += m[s];
        return deg <= order;
    });
}

AlgebraMap TruncatedNormalSheaf::from_u1() const {
    AlgebraMap f(u1(), u01());
    f.set("w", Element::slot(u01(), "z", -1));
    f.set("n1", (Element::slot(u01(), "z", -m) * Element::slot(u01(), "n0")).scaled(c));
    return f;
}

TruncatedNormalSheaf normal_sheaf(int m, int order, int window, int mu, const Rational& c) {
    if (order < 0 || window < 0) throw std::invalid_argument("negative order or window");
    if (c == 0) throw std::invalid_argument("zero conormal transition");
    TruncatedNormalSheaf s;
    s.m = m;
    s.order = order;
    s.window = window;
    s.mu = mu;
    s.c = c;
    // n0 and n1 are slots of weight mu and mu - m with exponents confined to [0, order]
    auto u0 = Algebra::make({{"z", 1, false}, {"n0", mu, true}}, {});
    auto u1 = Algebra::make({{"w", -1, true}, {"n1", mu - m, true}}, {});
    auto u01 = Algebra::make({{"z", 1, true}, {"n0", mu, true}}, {});
    SliceOptions s0, s1, s01;
    s0.laurent_window["n0"] = {0, order};
    s1.laurent_window["w"] = {0, window + order * std::abs(mu - m)};
    s1.laurent_window["n1"] = {0, order};
    s01.laurent_window["z"] = {-(window + order * std::abs(mu)), window + order * std::abs(mu)};
    s01.laurent_window["n0"] = {0, order};

    auto& v = s.diagram;
    v.levels.push_back({DiagramComponent{"U0", u0, std::nullopt, s0, 0}, DiagramComponent{"U1", u1, std::nullopt, s1, 0}});
    v.levels.push_back({DiagramComponent{"U01", u01, std::nullopt, s01, 0}});
    AlgebraMap from_u0(u0, u01);
    from_u0.set("z", Element::slot(u01, "z"));
    from_u0.set("n0", Element::slot(u01, "n0"));
    v.cofaces.resize(2);
    v.cofaces[1].push_back({ComponentMap{1, s.from_u1(), Element::constant(u01, 1)}});
    v.cofaces[1].push_back({ComponentMap{0, from_u0, Element::constant(u01, 1)}});
    return s;
}

Derivation DerivationAction::apply(const Vec& v) const {
    if (alpha.empty()) throw std::invalid_argument("empty derivation action");
    Derivation out = alpha.front().scaled(v.at(0));
    for (std::size_t i = 1; i < alpha.size(); ++i) out = out + alpha[i].scaled(v.at(i));
    return out;
}

DerivationAction heisenberg_action(const TruncatedNormalSheaf& s) {
    if (s.order != 2) throw std::invalid_argument("the Heisenberg action is closed only at order 2");
    const auto& u01 = s.diagram.levels[1][0].algebra;
    const auto z = Element::slot(u01, "z");
    const auto n0 = Element::slot(u01, "n0");
    const Element zero(u01);
    Derivation a(u01, 0), b(u01, 0), c(u01, 0);
    a.set("z", z * n0).set("n0", zero);
    b.set("z", zero).set("n0", n0 * n0);
    c.set("z", -(z * n0 * n0)).set("n0", zero);

    NilpotentDgla h({"a", "b", "c"}, {0, 0, 0});
    h.set_bracket(0, 1, {0, 0, 1});
    DerivationAction out;
    out.lie.g0 = h;
    out.lie.g1 = NilpotentDgla::abelian({});
    out.lie.g01 = h;
    out.lie.rho0 = RatMatrix::identity(3);
    out.lie.rho1 = RatMatrix(3, 0);
    out.alpha = {a, b, c};
    return out;
}

std::vector<std::string> check_action(const TruncatedNormalSheaf& s, const DerivationAction& a) {
    std::vector<std::string> bad;
    const auto& g = a.lie.g01;
    const auto& alg = s.diagram.levels[1][0].algebra;
    if (a.alpha.size() != g.dim()) return {"action has the wrong number of derivations"};
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) {
            const Derivation lhs = commutator(a.alpha[i], a.alpha[j]);
            const Derivation rhs = a.apply(g.bracket_of(i, j));
            for (std::size_t slot = 0; slot < alg->width(); ++slot) {
                const Element x(alg, [&] {
                    Monomial m = alg->unit();
                    m[slot] = 1;
                    return m;
                }());
                if (!(s.truncate(lhs.apply(x)) == s.truncate(rhs.apply(x))))
                    bad.push_back("[" + g.name(i) + "," + g.name(j) + "] differs on " + alg->slot_name(slot));
            }
        }
    return bad;
}

}  // namespace dsi
