#include "dsi/gca.hpp"

#include <algorithm>

namespace dsi {

std::map<int, std::vector<Monomial>> slice_monomials(const Algebra& alg, int weight, const SliceOptions& opt) {
    std::vector<std::size_t> odd, laurent, poly;
    for (std::size_t s = 0; s < alg.width(); ++s) {
        const bool is_var = s < alg.nvars();
        if (is_var && alg.variables()[s].invertible) {
            if (!opt.laurent_window.count(alg.slot_name(s)))
                throw SliceError("infinite slice: Laurent variable " + alg.slot_name(s) + " needs an exponent window");
            laurent.push_back(s);
        } else if (alg.slot_odd(s)) {
            odd.push_back(s);
        } else {
            if (alg.slot_weight(s) <= 0)
                throw SliceError("infinite slice: polynomial slot " + alg.slot_name(s) + " has non-positive weight");
            poly.push_back(s);
        }
    }
    std::map<int, std::vector<Monomial>> out;
    Monomial m = alg.unit();

    auto fill_poly = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i == poly.size()) {
            if (remaining == 0) out[alg.degree(m)].push_back(m);
            return;
        }
        const std::size_t s = poly[i];
        const int w = alg.slot_weight(s);
        for (int e = 0; e * w <= remaining; ++e) {
            m[s] = e;
            self(self, i + 1, remaining - e * w);
        }
        m[s] = 0;
    };
    auto fill_laurent = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i == laurent.size()) {
            if (remaining >= 0) fill_poly(fill_poly, 0, remaining);
            return;
        }
        const std::size_t s = laurent[i];
        const auto [lo, hi] = opt.laurent_window.at(alg.slot_name(s));
        for (int e = lo; e <= hi; ++e) {
            m[s] = e;
            self(self, i + 1, remaining - e * alg.slot_weight(s));
        }
        m[s] = 0;
    };
    auto fill_odd = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i == odd.size()) {
            fill_laurent(fill_laurent, 0, remaining);
            return;
        }
        const std::size_t s = odd[i];
        m[s] = 0;
        self(self, i + 1, remaining);
        m[s] = 1;
        self(self, i + 1, remaining - alg.slot_weight(s));
        m[s] = 0;
    };
    fill_odd(fill_odd, 0, weight);

    MonomialOrder order{&alg};
    for (auto& [deg, list] : out) std::sort(list.begin(), list.end(), order);
    return out;
}

SliceBasis::SliceBasis(int w, std::map<int, std::vector<Monomial>> monomials) : weight(w), by_degree(std::move(monomials)) {
    for (const auto& [deg, list] : by_degree)
        for (std::size_t i = 0; i < list.size(); ++i) index[deg].emplace(list[i], i);
}

std::size_t SliceBasis::dim(int degree) const {
    auto it = by_degree.find(degree);
    return it == by_degree.end() ? 0 : it->second.size();
}

std::optional<std::size_t> SliceBasis::find(int degree, const Monomial& m) const {
    auto it = index.find(degree);
    if (it == index.end()) return std::nullopt;
    auto jt = it->second.find(m);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

Vec SliceBasis::coords(int degree, const Element& e) const {
    Vec v = zero_vec(dim(degree));
    for (const auto& [m, c] : e.terms()) {
        auto i = find(degree, m);
        if (!i) throw SliceError("term outside slice: " + e.algebra()->format(m));
        v[*i] = c;
    }
    return v;
}

Element SliceBasis::element(const AlgebraPtr& alg, int degree, std::span<const Rational> v) const {
    Element e(alg);
    auto it = by_degree.find(degree);
    if (it == by_degree.end()) return e;
    for (std::size_t i = 0; i < v.size(); ++i) e.add_term(it->second[i], v[i]);
    return e;
}

SlicedComplex slice_complex(const AlgebraPtr& alg, const Derivation& d, const SliceBasis& basis) {
    if (d.degree() != 1) throw std::invalid_argument("slice_complex needs a degree one differential");
    SlicedComplex c;
    if (basis.by_degree.empty()) {
        c.lo = 0;
        c.dims = {0};
        c.labels = {{}};
        return c;
    }
    c.lo = basis.by_degree.begin()->first;
    const int hi = basis.by_degree.rbegin()->first;
    for (int n = c.lo; n <= hi; ++n) {
        c.dims.push_back(basis.dim(n));
        std::vector<std::string> labels;
        if (auto it = basis.by_degree.find(n); it != basis.by_degree.end())
            for (const auto& m : it->second) labels.push_back(alg->format(m));
        c.labels.push_back(std::move(labels));
    }
    for (int n = c.lo; n < hi; ++n)
        c.diff.push_back(operator_matrix(basis, n, basis, n + 1, alg, [&](const Element& e) { return d.apply(e); }));
    return c;
}

}  // namespace dsi
