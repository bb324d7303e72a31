#include "dsi/mcgauge.hpp"

namespace dsi {

namespace {

struct Twisted {
    const TwModel& model;
    const TruncatedNormalSheaf& sheaf;
    Derivation q;  // alpha(T) on A(U01)

    TwElement apply(const TwElement& x) const {
        TwElement y = model.differential(x);
        const TwElement qx = overlap_twist(model, sheaf, q, x);
        y.levels[1][0] += qx.levels[1][0];
        return y;
    }
};

bool is_zero(const TwElement& x) {
    for (const auto& level : x.levels)
        for (const auto& e : level)
            if (!e.is_zero()) return false;
    return true;
}

// ker(d + Q) on TW^0, as coordinates in the slice basis.
std::vector<Vec> kernel(const Twisted& op, const TwSlice& slice, DeformReport& r) {
    const std::size_t n = slice.complex.dim(0);
    std::map<LevelMonomial, std::size_t> index;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols;
    for (std::size_t j = 0; j < n; ++j) {
        Vec e = zero_vec(n);
        e[j] = 1;
        const TwElement x = slice.element(op.model, 0, e);
        const TwElement y = op.apply(x);
        if (!is_zero(op.apply(y))) {
            r.square_zero = false;
            r.failures.push_back("(d+Q)^2 != 0 on basis vector " + std::to_string(j));
        }
        for (const auto& label : op.model.equalizer_defects(y)) {
            r.preserves_equalizer = false;
            r.failures.push_back("d+Q leaves the equalizer: " + label);
        }
        auto& col = cols.emplace_back();
        for (std::size_t lv = 0; lv < y.levels.size(); ++lv)
            for (std::size_t c = 0; c < y.levels[lv].size(); ++c)
                for (const auto& [m, coef] : y.levels[lv][c].terms()) {
                    auto [it, fresh] = index.try_emplace(LevelMonomial{static_cast<int>(lv), c, m}, index.size());
                    col.emplace_back(it->second, coef);
                }
    }
    RatMatrix m(index.size(), n);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [i, coef] : cols[j]) m.add(i, j, coef);
    return rank_kernel(m).kernel;
}

}  // namespace

TwElement overlap_twist(const TwModel& model, const TruncatedNormalSheaf& s, const Derivation& d, const TwElement& x) {
    TwElement y = model.zero();
    const auto& forms = simplex_forms(1);
    Element& top = y.levels[1][0];
    for (const auto& [om, v] : model.split(1, 0, 1, x.levels[1][0])) {
        const Element w = s.truncate(d.apply(v));
        if (!w.is_zero()) top += model.join(1, 0, 1, w, forms.dt(1) * Element(forms.algebra(), om));
    }
    return y;
}

DeformReport deform_tw(const TruncatedNormalSheaf& s, const DerivationAction& a, const Vec& t, int weight, int p_max) {
    if (s.diagram.depth() != 1) throw std::invalid_argument("deform_tw needs a two-chart diagram");
    if (a.alpha.size() != t.size()) throw std::invalid_argument("cocycle and action differ in dimension");
    DeformReport r;
    r.weight = weight;
    r.p_max = p_max;
    const TwModel model(s.diagram);
    const Twisted op{model, s, a.apply(t)};
    const TwSlice slice = tw(model, weight, p_max);
    const auto ker = kernel(op, slice, r);
    r.h0 = ker.size();
    r.h0_next = kernel(op, tw(model, weight, p_max + 1), r).size();
    for (const auto& v : ker) {
        const TwElement x = slice.element(model, 0, v);
        LevelElement charts;
        for (std::size_t c = 0; c < x.levels[0].size(); ++c)
            charts.push_back(transfer(x.levels[0][c], s.diagram.levels[0][c].algebra));
        r.sections.push_back(std::move(charts));
    }
    return r;
}

}  // namespace dsi
