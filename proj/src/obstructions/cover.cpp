#include "dsi/obstructions.hpp"

namespace dsi {

LineBundle LineBundle::dual() const {
    Rational inv = 1 / c;
    inv.canonicalize();
    return LineBundle{name + "^vee", inv, -e, -mu};
}

LineBundle LineBundle::tensor(const LineBundle& o) const {
    Rational prod = c * o.c;
    prod.canonicalize();
    return LineBundle{name + " (x) " + o.name, prod, e + o.e, mu + o.mu};
}

LineBundle LineBundle::power(int k) const {
    if (k < 0) return dual().power(-k);
    LineBundle out{"O", 1, 0, 0};
    for (int i = 0; i < k; ++i) out = out.tensor(*this);
    out.name = k == 1 ? name : "S^" + std::to_string(k) + " " + name;
    return out;
}

LineBundle ChartCover::conormal() const { return LineBundle{"N^vee", sheaf.c, -sheaf.m, sheaf.mu}; }

LineBundle ChartCover::tangent() const { return LineBundle{"T_X", -1, 2, -1}; }

Derivation ChartCover::from_u1(const Derivation& d) const {
    const auto& u01 = sheaf.u01();
    const AlgebraMap rho = sheaf.from_u1();
    const auto& u1 = sheaf.u1();
    Rational inv = 1 / sheaf.c;
    inv.canonicalize();
    Derivation out(u01, d.degree());
    // z = rho(1/w) and n0 = rho(w^{-m} n1) / c
    out.set("z", sheaf.truncate(rho.apply(d.apply(Element::slot(u1, "w", -1)))));
    out.set("n0", sheaf.truncate(rho.apply(d.apply((Element::slot(u1, "w", -sheaf.m) * Element::slot(u1, "n1")).scaled(inv)))));
    return out;
}

namespace {

// The slot a basis derivation moves, and the monomial it sends it to.
std::pair<std::size_t, Monomial> support(const Derivation& d) {
    const auto& alg = *d.algebra();
    for (std::size_t s = 0; s < alg.width(); ++s) {
        const auto& img = d.image(s);
        if (img && !img->is_zero()) return {s, img->terms().begin()->first};
    }
    throw std::invalid_argument("basis derivation is zero");
}

// Weight-zero derivations x -> x^a n^b and n -> x^a n^{b+1} that raise the conormal degree.
std::vector<Derivation> unipotent_basis(const AlgebraPtr& alg, const std::string& x, const std::string& n, int order,
                                        bool laurent) {
    const int xw = alg->slot_weight(*alg->slot(x));
    const int nw = alg->slot_weight(*alg->slot(n));
    const Element zero(alg);
    std::vector<Derivation> out;
    auto add = [&](const std::string& target, int num, int b) {
        if (num % xw != 0) return;
        const int a = num / xw;
        if (a < 0 && !laurent) return;
        Derivation d(alg, 0);
        d.set(x, zero).set(n, zero);
        d.set(target, Element::slot(alg, x, a) * Element::slot(alg, n, b));
        out.push_back(std::move(d));
    };
    for (int b = 1; b <= order; ++b) add(x, xw - b * nw, b);
    for (int b = 1; b < order; ++b) add(n, -b * nw, b + 1);
    return out;
}

std::vector<std::string> names(const std::vector<Derivation>& basis) {
    std::vector<std::string> out;
    for (const auto& d : basis) {
        const auto [s, m] = support(d);
        out.push_back(d.algebra()->slot_name(s) + "->" + d.algebra()->format(m));
    }
    return out;
}

NilpotentDgla lie_of(const std::vector<Derivation>& basis, const TruncatedNormalSheaf& s) {
    NilpotentDgla g(names(basis), std::vector<int>(basis.size(), 0));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Derivation br = commutator(basis[i], basis[j]);
            const auto& alg = *br.algebra();
            Derivation cut(br.algebra(), 0);
            for (std::size_t k = 0; k < alg.width(); ++k)
                if (br.image(k)) cut.set_slot(k, s.truncate(*br.image(k)));
            auto v = derivation_coords(basis, cut);
            if (!v) throw std::logic_error("unipotent derivations are not closed under the bracket");
            g.set_bracket(i, j, *v);
        }
    return g;
}

}  // namespace

std::optional<Vec> derivation_coords(const std::vector<Derivation>& basis, const Derivation& d) {
    Vec out = zero_vec(basis.size());
    const auto& alg = *d.algebra();
    std::map<std::pair<std::size_t, Monomial>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(support(basis[i]), i);
    for (std::size_t s = 0; s < alg.width(); ++s) {
        if (!d.image(s)) continue;
        for (const auto& [m, c] : d.image(s)->terms()) {
            auto it = index.find({s, m});
            if (it == index.end()) return std::nullopt;
            out[it->second] = c;
        }
    }
    return out;
}

ChartCover p1_cover(int m, int order, int window, int mu, const Rational& c) {
    ChartCover cv;
    cv.sheaf = normal_sheaf(m, order, window, mu, c);
    cv.der0 = unipotent_basis(cv.sheaf.u0(), "z", "n0", order, false);
    cv.der1 = unipotent_basis(cv.sheaf.u1(), "w", "n1", order, false);
    cv.der01 = unipotent_basis(cv.sheaf.u01(), "z", "n0", order, true);

    auto& lie = cv.action.lie;
    lie.g0 = lie_of(cv.der0, cv.sheaf);
    lie.g1 = lie_of(cv.der1, cv.sheaf);
    lie.g01 = lie_of(cv.der01, cv.sheaf);
    std::vector<Vec> cols0, cols1;
    for (const auto& d : cv.der0) {
        Derivation moved(cv.sheaf.u01(), 0);
        moved.set("z", transfer(*d.image(*d.algebra()->slot("z")), cv.sheaf.u01()));
        moved.set("n0", transfer(*d.image(*d.algebra()->slot("n0")), cv.sheaf.u01()));
        cols0.push_back(*derivation_coords(cv.der01, moved));
    }
    for (const auto& d : cv.der1) {
        auto v = derivation_coords(cv.der01, cv.from_u1(d));
        if (!v) throw std::logic_error("restriction of a U1 derivation left the overlap basis");
        cols1.push_back(*v);
    }
    lie.rho0 = RatMatrix::from_columns(cv.der01.size(), cols0);
    lie.rho1 = RatMatrix::from_columns(cv.der01.size(), cols1);
    cv.action.alpha = cv.der01;
    return cv;
}

}  // namespace dsi
