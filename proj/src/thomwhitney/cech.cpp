#include "subspace.hpp"

namespace dsi {

namespace {

LevelElement empty_level(const CosimplicialDiagram& v, int n) {
    LevelElement x;
    for (const auto& comp : v.levels[n]) x.emplace_back(comp.algebra);
    return x;
}

std::vector<LevelElement> empty_tot(const CosimplicialDiagram& v) {
    std::vector<LevelElement> x;
    for (int n = 0; n <= v.depth(); ++n) x.push_back(empty_level(v, n));
    return x;
}

std::vector<LevelElement> from_ambient(const CosimplicialDiagram& v, const AmbientSubspace& s, std::span<const Rational> a) {
    auto x = empty_tot(v);
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != 0) x[s.ambient[j].level][s.ambient[j].component].add_term(s.ambient[j].monomial, a[j]);
    return x;
}

std::optional<Vec> to_ambient(const AmbientSubspace& s, const std::vector<LevelElement>& x) {
    Vec v = zero_vec(s.ambient.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        for (std::size_t c = 0; c < x[n].size(); ++c)
            for (const auto& [m, coef] : x[n][c].terms()) {
                auto j = s.index.find(LevelMonomial{static_cast<int>(n), c, m});
                if (j == s.index.end()) return std::nullopt;
                v[j->second] += coef;
            }
    return v;
}

}  // namespace

std::vector<LevelElement> TotSlice::element(const TwModel& m, int degree, std::span<const Rational> coords) const {
    const auto& s = spaces.at(degree);
    Vec a = zero_vec(s.ambient.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0)
            for (std::size_t j = 0; j < a.size(); ++j) a[j] += coords[i] * s.basis[i][j];
    return from_ambient(m.diagram(), s, a);
}

std::optional<Vec> TotSlice::coords(const TwModel&, int degree, const std::vector<LevelElement>& x) const {
    auto it = spaces.find(degree);
    if (it == spaces.end()) return std::nullopt;
    auto a = to_ambient(it->second, x);
    if (!a) return std::nullopt;
    return it->second.coords(*a);
}

TotSlice tot(const TwModel& m, int weight) {
    const auto& v = m.diagram();
    const int depth = m.depth();
    TotSlice out;
    out.weight = weight;
    int alo, ahi;
    const auto slices = detail::level_slices(v, weight, alo, ahi);
    const int lo = alo, hi = ahi + depth;
    for (int deg = lo; deg <= hi; ++deg) {
        AmbientSubspace& s = out.spaces[deg];
        for (int n = 0; n <= depth; ++n)
            for (std::size_t c = 0; c < v.levels[n].size(); ++c)
                if (auto it = slices[n][c].find(deg - n); it != slices[n][c].end())
                    for (const auto& am : it->second) s.ambient.push_back({n, c, am});
        // normalized cochains: killed by every codegeneracy
        detail::cut_out(s, [&](const LevelMonomial& lm) {
            std::vector<std::pair<std::string, Element>> res;
            if (!v.has_codegeneracies() || lm.level == 0) return res;
            LevelElement x = empty_level(v, lm.level);
            x[lm.component].add_term(lm.monomial, 1);
            for (int k = 0; k < lm.level; ++k) {
                auto y = apply_codegeneracy(v, lm.level - 1, k, x);
                for (std::size_t c = 0; c < y.size(); ++c)
                    res.emplace_back(std::to_string(lm.level - 1) + "," + std::to_string(k) + "," + std::to_string(c), y[c]);
            }
            return res;
        });
    }
    if (hi < lo) {
        out.spaces[0];
        out.complex = SlicedComplex{0, {0}, {}, {{}}};
        return out;
    }
    out.complex = detail::subspace_complex(out.spaces, lo, hi, [&](int deg, const Vec& b) {
        const auto x = from_ambient(v, out.spaces.at(deg), b);
        auto y = empty_tot(v);
        for (int n = 0; n <= depth; ++n) {
            const auto dx = level_differential(v, n, x[n]);
            for (std::size_t c = 0; c < dx.size(); ++c) y[n][c] += dx[c];
            if (n == depth) continue;
            // (-1)^{|c|} sum_k (-1)^k d^{n+1,k}, with |c| = deg - n the internal degree
            for (int k = 0; k <= n + 1; ++k) {
                const auto dk = apply_coface(v, n + 1, k, x[n]);
                const int sign = ((deg - n) + k) % 2 ? -1 : 1;
                for (std::size_t c = 0; c < dk.size(); ++c) y[n + 1][c] += dk[c].scaled(sign);
            }
        }
        auto a = to_ambient(out.spaces.at(deg + 1), y);
        if (!a) throw SliceError("Cech differential leaves the slice");
        return *a;
    });
    return out;
}

}  // namespace dsi
