#include "dsi/obstructions.hpp"

namespace dsi {

namespace {

int conormal_degree(const Algebra& alg, const Monomial& m) {
    auto s = alg.slot("n0");
    return s ? m[*s] : 0;
}

// Lowest conormal degree among the terms, nothing for zero.
std::optional<int> lowest_degree(const Element& x) {
    std::optional<int> low;
    for (const auto& [m, c] : x.terms()) {
        const int d = conormal_degree(*x.algebra(), m);
        if (!low || d < *low) low = d;
    }
    return low;
}

}  // namespace

FilteredAutomorphism::FilteredAutomorphism(const TruncatedNormalSheaf& s, Element z_image, Element n_image)
    : FilteredAutomorphism(s.order, std::move(z_image), std::move(n_image)) {
    if (z_.algebra() != s.u01()) throw std::invalid_argument("transition images must live on U01");
}

FilteredAutomorphism::FilteredAutomorphism(int order, Element z_image, Element n_image)
    : order_(order), z_(std::move(z_image)), n_(std::move(n_image)) {
    const auto& alg = z_.algebra();
    if (n_.algebra() != alg) throw std::invalid_argument("transition images live in different algebras");
    z_ = truncate(z_);
    n_ = truncate(n_);
    // 1/phi(z) = z^{-1} sum_j (-u)^j with phi(z) = z (1 + u)
    const Element one = Element::constant(alg, 1);
    const Element u = truncate(z_ * Element::slot(alg, "z", -1)) - one;
    Element sum = one, power = one;
    for (int j = 1; j <= order_; ++j) {
        power = truncate(power * u).scaled(-1);
        sum += power;
    }
    z_inv_ = truncate(Element::slot(alg, "z", -1) * sum);
}

FilteredAutomorphism FilteredAutomorphism::identity(const TruncatedNormalSheaf& s) {
    return FilteredAutomorphism(s, Element::slot(s.u01(), "z"), Element::slot(s.u01(), "n0"));
}

FilteredAutomorphism FilteredAutomorphism::exp(const TruncatedNormalSheaf& s, const Derivation& d) {
    if (d.algebra() != s.u01()) throw std::invalid_argument("derivation must act on U01");
    return exp(s.order, d);
}

FilteredAutomorphism FilteredAutomorphism::exp(int order, const Derivation& d) {
    const auto& alg = d.algebra();
    auto cut = [&](const Element& x) { return x.filtered([&](const Monomial& m) { return conormal_degree(*alg, m) <= order; }); };
    auto series = [&](const Element& x) {
        Element out = x, term = x;
        for (int j = 1; !term.is_zero(); ++j) {
            if (j > order + 1) throw std::invalid_argument("derivation does not raise the conormal degree");
            term = cut(d.apply(term)).scaled(Rational(1, j));
            out += term;
        }
        return out;
    };
    return FilteredAutomorphism(order, series(Element::slot(alg, "z")), series(Element::slot(alg, "n0")));
}

Element FilteredAutomorphism::truncate(const Element& x) const {
    const auto& alg = *x.algebra();
    return x.filtered([&](const Monomial& m) { return conormal_degree(alg, m) <= order_; });
}

Element FilteredAutomorphism::apply(const Element& x) const {
    const auto& alg = z_.algebra();
    const std::size_t zs = *alg->slot("z"), ns = *alg->slot("n0");
    Element out(alg);
    for (const auto& [m, c] : x.terms()) {
        Element term = Element::constant(alg, c);
        const Element& base = m[zs] >= 0 ? z_ : z_inv_;
        for (int i = 0; i < std::abs(m[zs]); ++i) term = truncate(term * base);
        for (int i = 0; i < m[ns]; ++i) term = truncate(term * n_);
        out += term;
    }
    return out;
}

FilteredAutomorphism FilteredAutomorphism::after(const FilteredAutomorphism& inner) const {
    FilteredAutomorphism out = *this;
    out.z_ = apply(inner.z_);
    out.n_ = apply(inner.n_);
    out.z_inv_ = apply(inner.z_inv_);
    return out;
}

std::vector<std::string> FilteredAutomorphism::unipotence_defects() const {
    std::vector<std::string> bad;
    const auto& alg = z_.algebra();
    const Element dz = z_ - Element::slot(alg, "z");
    const Element dn = n_ - Element::slot(alg, "n0");
    if (auto low = lowest_degree(dz); low && *low < 1) bad.push_back("gr<=1 is not the identity on z: " + dz.str());
    if (auto low = lowest_degree(dn); low && *low < 2) bad.push_back("gr<=1 is not the identity on n0: " + dn.str());
    const int wz = alg->slot_weight(*alg->slot("z")), wn = alg->slot_weight(*alg->slot("n0"));
    if (z_.weight() != std::optional<int>(wz)) bad.push_back("image of z is not of torus weight " + std::to_string(wz));
    if (n_.weight() != std::optional<int>(wn)) bad.push_back("image of n0 is not of torus weight " + std::to_string(wn));
    return bad;
}

std::vector<std::string> FilteredAutomorphism::multiplicativity_defects() const {
    std::vector<std::string> bad;
    const auto& alg = z_.algebra();
    std::vector<Element> samples;
    for (int a : {-2, -1, 1, 3})
        for (int b = 0; b <= std::min(order_, 2); ++b) samples.push_back(Element::slot(alg, "z", a) * Element::slot(alg, "n0", b));
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i; j < samples.size(); ++j) {
            const Element lhs = apply(samples[i] * samples[j]);
            const Element rhs = truncate(apply(samples[i]) * apply(samples[j]));
            if (!(lhs == rhs)) bad.push_back("phi(xy) != phi(x)phi(y) for x = " + samples[i].str() + ", y = " + samples[j].str());
        }
    return bad;
}

Derivation log_cocycle(const FilteredAutomorphism& phi) {
    if (auto bad = phi.unipotence_defects(); !bad.empty()) throw NotUnipotent(bad.front());
    const auto& alg = phi.algebra();
    // log(phi)(x) = sum_j (-1)^{j+1} (phi - 1)^j x / j; (phi - 1) raises the conormal degree
    auto series = [&](const Element& x) {
        Element out(alg), term = x;
        for (int j = 1; j <= phi.order() + 1; ++j) {
            term = phi.apply(term) - term;
            if (term.is_zero()) break;
            out += term.scaled(Rational(j % 2 ? 1 : -1, j));
        }
        return out;
    };
    Derivation t(alg, 0);
    t.set("z", series(Element::slot(alg, "z")));
    t.set("n0", series(Element::slot(alg, "n0")));
    return t;
}

FilteredAutomorphism inverse(const FilteredAutomorphism& phi) {
    return FilteredAutomorphism::exp(phi.order(), log_cocycle(phi).scaled(-1));
}

CocycleReport verify_cocycle(const ChartCover& cover, const FilteredAutomorphism& phi01, const FilteredAutomorphism& phi10) {
    CocycleReport r;
    for (const auto& [tag, phi] : {std::pair{"phi01", &phi01}, std::pair{"phi10", &phi10}}) {
        if (phi->algebra() != cover.sheaf.u01() || phi->order() != cover.order()) {
            r.failures.push_back(std::string(tag) + " is not defined on this cover");
            return r;
        }
        for (auto& s : phi->unipotence_defects()) r.failures.push_back(std::string(tag) + ": " + s);
        for (auto& s : phi->multiplicativity_defects()) r.failures.push_back(std::string(tag) + ": " + s);
    }
    const auto& alg = cover.sheaf.u01();
    for (const auto& [tag, comp] : {std::pair{"phi10 o phi01", phi10.after(phi01)}, std::pair{"phi01 o phi10", phi01.after(phi10)}}) {
        for (const char* g : {"z", "n0"}) {
            const Element x = Element::slot(alg, g);
            const Element diff = comp.apply(x) - x;
            if (!diff.is_zero()) r.failures.push_back(std::string(tag) + " is not the identity on " + g + ": off by " + diff.str());
        }
    }
    return r;
}

}  // namespace dsi
