#pragma once

#include "dsi/thomwhitney.hpp"

namespace dsi::detail {

using DegreeSlices = std::vector<std::vector<std::map<int, std::vector<Monomial>>>>;  // [level][component]

inline DegreeSlices level_slices(const CosimplicialDiagram& v, int w, int& lo, int& hi) {
    DegreeSlices out;
    lo = 0;
    hi = -1;
    bool any = false;
    for (const auto& comps : v.levels) {
        out.emplace_back();
        for (const auto& comp : comps) {
            out.back().push_back(slice_monomials(*comp.algebra, w - comp.weight_offset, comp.slice));
            for (const auto& [deg, ms] : out.back().back()) {
                if (ms.empty()) continue;
                if (!any || deg < lo) lo = deg;
                if (!any || deg > hi) hi = deg;
                any = true;
            }
        }
    }
    return out;
}

// Kernel of the linear map sending each ambient vector to the residuals of the given equations.
template <class Residuals>
void cut_out(AmbientSubspace& s, Residuals&& residuals) {
    std::map<std::pair<std::string, Monomial>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(s.ambient.size());
    for (std::size_t j = 0; j < s.ambient.size(); ++j)
        for (const auto& [label, diff] : residuals(s.ambient[j]))
            for (const auto& [m, c] : diff.terms()) {
                auto [it, fresh] = rows.try_emplace({label, m}, rows.size());
                cols[j].emplace_back(it->second, c);
            }
    RatMatrix eq(rows.size(), s.ambient.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, c] : cols[j]) eq.add(r, j, c);
    auto rk = rank_kernel(eq);
    s.basis = std::move(rk.kernel);
    std::vector<char> pivot(s.ambient.size(), 0);
    for (std::size_t p : rk.pivot_columns) pivot[p] = 1;
    s.free.clear();
    for (std::size_t j = 0; j < s.ambient.size(); ++j)
        if (!pivot[j]) s.free.push_back(j);
    for (std::size_t j = 0; j < s.ambient.size(); ++j) s.index[s.ambient[j]] = j;
}

template <class ToVec>
SlicedComplex subspace_complex(const std::map<int, AmbientSubspace>& spaces, int lo, int hi, ToVec&& image_of) {
    SlicedComplex c;
    c.lo = lo;
    for (int n = lo; n <= hi; ++n) {
        const auto& s = spaces.at(n);
        c.dims.push_back(s.basis.size());
        c.labels.emplace_back();
    }
    for (int n = lo; n < hi; ++n) {
        const auto& src = spaces.at(n);
        const auto& dst = spaces.at(n + 1);
        RatMatrix d(dst.basis.size(), src.basis.size());
        for (std::size_t j = 0; j < src.basis.size(); ++j) {
            auto coords = dst.coords(image_of(n, src.basis[j]));
            if (!coords) throw std::logic_error("differential leaves the subspace");
            for (std::size_t i = 0; i < coords->size(); ++i)
                if ((*coords)[i] != 0) d.set(i, j, (*coords)[i]);
        }
        c.diff.push_back(std::move(d));
    }
    return c;
}

}  // namespace dsi::detail
