#include "dsi/obstructions.hpp"

namespace dsi {

namespace {

int conormal_degree(const Algebra& alg, const Monomial& m) {
    int deg = 0;
    for (const char* name : {"n0", "n1"})
        if (auto s = alg.slot(name)) deg += m[*s];
    return deg;
}

Element degree_part(const Element& x, int k) {
    const auto& alg = *x.algebra();
    return x.filtered([&](const Monomial& m) { return conormal_degree(alg, m) == k; });
}

// Coefficients of z^a n0^k in x, keyed by a.
Laurent frame_coefficients(const Element& x, int k) {
    Laurent out;
    const auto& alg = *x.algebra();
    const std::size_t zs = *alg.slot("z");
    for (const auto& [m, c] : x.terms())
        if (conormal_degree(alg, m) == k) out[m[zs]] = c;
        else throw std::logic_error("structure map leaves its conormal degree");
    return out;
}

bool is_zero(const TwElement& x) {
    for (const auto& level : x.levels)
        for (const auto& e : level)
            if (!e.is_zero()) return false;
    return true;
}

TwElement sum(const TwModel& model, std::initializer_list<TwElement> xs) {
    TwElement out = model.zero();
    for (const auto& x : xs) out = model.add(out, x);
    return out;
}

}  // namespace

TwElement conormal_part(const TwElement& x, int k) {
    TwElement out = x;
    for (auto& level : out.levels)
        for (auto& e : level) e = degree_part(e, k);
    return out;
}

TwElement LinftyStructure::q(const TwModel& model, const TruncatedNormalSheaf& s, int r, const TwElement& x) const {
    if (r < 0 || r >= static_cast<int>(parts.size())) return model.zero();
    return overlap_twist(model, s, parts[r], x);
}

Laurent LinftyStructure::anchor_cochain(int k) const {
    if (k < 0 || k >= static_cast<int>(parts.size())) return {};
    return frame_coefficients(parts[k].apply(Element::slot(t.algebra(), "z")), k);
}

Laurent LinftyStructure::bracket_cochain(int k) const {
    if (k < 1 || k > static_cast<int>(parts.size())) return {};
    return frame_coefficients(parts[k - 1].apply(Element::slot(t.algebra(), "n0")), k);
}

LinftyStructure linfty_from_cocycle(const ChartCover& cover, const FilteredAutomorphism& phi) {
    LinftyStructure l;
    l.order = cover.order();
    l.t = log_cocycle(phi);
    auto theta = derivation_coords(cover.der01, l.t);
    if (!theta) throw std::invalid_argument("log of the transition is not a weight-zero unipotent derivation");
    l.theta = *theta;
    // theta dt1 is flat on the edge, and alpha carries it back to a derivation
    const auto mc = cocycle_to_mc(cover.action.lie, l.theta);
    if (!is_mc(cover.action.lie.edge(), mc)) throw NotMaurerCartan("transition does not give a flat connection");
    const Derivation q = cover.action.apply(l.theta);
    const auto& alg = cover.sheaf.u01();
    const Element z = Element::slot(alg, "z"), n = Element::slot(alg, "n0");
    if (!(q.apply(z) == l.t.apply(z)) || !(q.apply(n) == l.t.apply(n)))
        throw std::logic_error("alpha(theta) differs from the log of the transition");
    for (int r = 0; r <= l.order; ++r) {
        Derivation part(alg, 0);
        part.set("z", degree_part(q.apply(z), r));
        part.set("n0", degree_part(q.apply(n), r + 1));
        l.parts.push_back(std::move(part));
    }
    return l;
}

RelationReport check_relations(const ChartCover& cover, const LinftyStructure& l, int window, int p_max) {
    RelationReport r;
    const auto& s = cover.sheaf;
    const auto& alg = s.u01();
    if (!l.parts.empty() && (!l.parts[0].apply(Element::slot(alg, "z")).is_zero() ||
                             !l.parts[0].apply(Element::slot(alg, "n0")).is_zero())) {
        r.minimal = false;
        r.failures.push_back("Q has a part preserving the conormal degree");
    }
    const TwModel model(s.diagram);
    auto q = [&](int k, const TwElement& x) { return l.q(model, s, k, x); };
    auto d = [&](const TwElement& x) { return model.differential(x); };
    auto dq = [&](const TwElement& x) {
        TwElement y = d(x);
        for (int k = 1; k <= l.order; ++k) y = model.add(y, q(k, x));
        return y;
    };

    std::vector<TwElement> functions, sections;
    for (int w = -window; w <= window; ++w) {
        const TwSlice slice = tw(model, w, p_max);
        for (int deg : {0, 1}) {
            const std::size_t n = slice.complex.dim(deg);
            for (std::size_t j = 0; j < n; ++j) {
                Vec e = zero_vec(n);
                e[j] = 1;
                const TwElement x = slice.element(model, deg, e);
                if (!is_zero(dq(dq(x)))) {
                    r.square_zero = false;
                    r.failures.push_back("(d+Q)^2 != 0 at weight " + std::to_string(w));
                }
                for (int c = 0; c <= 1; ++c) {
                    const TwElement xc = conormal_part(x, c);
                    if (is_zero(xc)) continue;
                    if (deg == 0) (c == 0 ? functions : sections).push_back(xc);
                    // [d, Q_k] + sum_{i+j=k} Q_i Q_j = 0 on conormal degree c
                    for (int k = 1; k <= l.order; ++k) {
                        TwElement rel = sum(model, {d(q(k, xc)), q(k, d(xc))});
                        for (int i = 1; i < k; ++i) rel = model.add(rel, q(i, q(k - i, xc)));
                        ++r.checked;
                        if (!is_zero(rel)) {
                            r.square_zero = false;
                            r.failures.push_back(std::string(c == 0 ? "a" : "l") + "-relation of order " + std::to_string(k) +
                                                 " fails at weight " + std::to_string(w) + ", degree " + std::to_string(deg));
                        }
                    }
                }
            }
        }
    }

    // [l_k, e(f)] = e(a_{k-1}(f)) on degree-zero samples
    const std::size_t samples = 4;
    for (std::size_t i = 0; i < std::min(samples, functions.size()); ++i)
        for (std::size_t j = 0; j < std::min(samples, sections.size()); ++j) {
            const TwElement& f = functions[i * functions.size() / std::min(samples, functions.size())];
            const TwElement& x = sections[j * sections.size() / std::min(samples, sections.size())];
            for (int k = 2; k <= l.order; ++k) {
                const TwElement lhs = model.add(q(k - 1, model.product(f, x)), model.scaled(model.product(f, q(k - 1, x)), -1));
                const TwElement rhs = model.product(q(k - 1, f), x);
                ++r.checked;
                if (!model.equal(lhs, rhs)) {
                    r.module = false;
                    r.failures.push_back("[l" + std::to_string(k) + ", e(f)] != e(a" + std::to_string(k - 1) + "(f))");
                }
            }
        }
    return r;
}

}  // namespace dsi
