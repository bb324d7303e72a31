#include "dsi/resolve.hpp"

#include <sstream>

namespace dsi {

KoszulData build_koszul(std::vector<Variable> vars, const std::vector<std::string>& section,
                        const std::string& generator_prefix) {
    auto base = Algebra::make(std::move(vars), {});
    std::vector<Element> s;
    for (const auto& text : section) s.push_back(parse_element(base, text));
    return build_koszul(base, s, generator_prefix);
}

KoszulData build_koszul(const AlgebraPtr& base, const std::vector<Element>& section,
                        const std::string& generator_prefix) {
    if (section.empty()) throw std::invalid_argument("build_koszul: empty section");
    if (base->ngens() != 0) throw std::invalid_argument("build_koszul: base ring must not carry generators");
    KoszulData k;
    k.base = base;
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < section.size(); ++i) {
        int w = 1;
        if (section[i].is_zero()) {
            k.zero_components.push_back(i);
        } else {
            auto sw = section[i].weight();
            if (!sw) throw std::invalid_argument("build_koszul: section component " + std::to_string(i + 1) +
                                                 " is not weight-homogeneous");
            w = *sw;
        }
        gens.push_back({generator_prefix + std::to_string(i + 1), -1, w});
    }
    k.algebra = Algebra::make(base->variables(), std::move(gens));
    k.q = Derivation(k.algebra, 1);
    for (std::size_t i = 0; i < section.size(); ++i) {
        k.base_section.push_back(section[i]);
        k.section.push_back(transfer(section[i], k.algebra));
        k.q.set_slot(k.algebra->nvars() + i, k.section.back());
    }
    for (std::size_t i = 0; i < section.size(); ++i) {
        Monomial m = k.algebra->unit();
        m[k.algebra->nvars() + i] = 1;
        if (!k.q.apply(k.q.apply(Element(k.algebra, m))).is_zero())
            throw std::logic_error("Koszul differential does not square to zero");
    }
    return k;
}

std::vector<Element> ideal_power_generators(const std::vector<Element>& gens, int power) {
    if (gens.empty()) return {};
    std::vector<Element> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(power), 0);
    if (power == 0) return {Element::constant(gens.front().algebra(), Rational(1))};
    for (;;) {
        Element p = Element::constant(gens.front().algebra(), Rational(1));
        for (std::size_t i : idx) p = p * gens[i];
        if (!p.is_zero()) out.push_back(std::move(p));
        // next non-decreasing index tuple
        int pos = power - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == gens.size()) --pos;
        if (pos < 0) break;
        const std::size_t v = idx[static_cast<std::size_t>(pos)] + 1;
        for (auto j = static_cast<std::size_t>(pos); j < idx.size(); ++j) idx[j] = v;
    }
    return out;
}

Echelon ideal_slice(const AlgebraPtr& base, const std::vector<Element>& gens, const SliceBasis& slice) {
    const int degree = 0;
    Echelon span(slice.dim(degree));
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        auto gw = g.weight();
        if (!gw) throw std::invalid_argument("ideal generator is not weight-homogeneous");
        const int rest = slice.weight - *gw;
        if (rest < 0) continue;
        auto mult = slice_monomials(*base, rest);
        for (const auto& m : mult[degree]) span.insert(slice.coords(degree, Element(base, m) * g));
    }
    return span;
}

ResolutionReport check_resolution(const KoszulData& k, int w_max) {
    ResolutionReport rep;
    for (int w = 0; w <= w_max; ++w) {
        WeightCohomology wc;
        wc.weight = w;
        SliceBasis basis(w, slice_monomials(*k.algebra, w));
        SlicedComplex c = slice_complex(k.algebra, k.q, basis);
        auto h = cohomology(c);
        if (!h.ok()) {
            rep.ok = false;
            rep.diagnostics.push_back("weight " + std::to_string(w) + ": d*d != 0 at degree " +
                                      std::to_string(*h.square_defect));
            continue;
        }
        for (const auto& dh : h.degrees) {
            wc.dims[dh.degree] = dh.dim;
            if (dh.degree != 0)
                for (const auto& r : dh.representatives)
                    wc.representatives[dh.degree].push_back(basis.element(k.algebra, dh.degree, r).str());
        }
        SliceBasis base_slice(w, slice_monomials(*k.base, w));
        wc.expected_h0 = base_slice.dim(0) - ideal_slice(k.base, k.base_section, base_slice).rank();

        wc.euler_slice = 0;
        for (const auto& [deg, d] : wc.dims) wc.euler_slice += (deg % 2 == 0 ? 1 : -1) * static_cast<int>(d);
        // independent count of Lambda^i E (x) O_Y at weight w
        const std::size_t r = k.rank();
        for (std::size_t subset = 0; subset < (std::size_t{1} << r); ++subset) {
            int wsub = 0, size = 0;
            for (std::size_t i = 0; i < r; ++i)
                if (subset & (std::size_t{1} << i)) {
                    wsub += k.algebra->generators()[i].weight;
                    ++size;
                }
            if (wsub > w) continue;
            const auto n = slice_monomials(*k.base, w - wsub)[0].size();
            wc.euler_exterior += (size % 2 == 0 ? 1 : -1) * static_cast<int>(n);
        }

        wc.ok = wc.dims[0] == wc.expected_h0 && wc.euler_slice == wc.euler_exterior;
        for (const auto& [deg, d] : wc.dims)
            if (deg < 0 && d != 0) {
                wc.ok = false;
                std::ostringstream os;
                os << "weight " << w << ": H^" << deg << " has dim " << d << ", representative "
                   << wc.representatives[deg].front();
                rep.diagnostics.push_back(os.str());
            }
        if (wc.dims[0] != wc.expected_h0)
            rep.diagnostics.push_back("weight " + std::to_string(w) + ": H^0 dim " + std::to_string(wc.dims[0]) +
                                      " but O_Y/I has dim " + std::to_string(wc.expected_h0));
        rep.ok = rep.ok && wc.ok;
        rep.weights.push_back(std::move(wc));
    }
    for (std::size_t i : k.zero_components)
        rep.diagnostics.push_back("section component " + std::to_string(i + 1) + " is zero (non-regular)");
    return rep;
}

}  // namespace dsi
