#include "dsi/neighborhoods.hpp"

#include <bit>
#include <set>

namespace dsi {

Element SelfIntersection::swap(const Element& e) const {
    Element out(algebra);
    for (const auto& [m, c] : e.terms()) {
        Monomial a = algebra->unit(), b = algebra->unit(), base = algebra->unit();
        for (std::size_t s = 0; s < algebra->nvars(); ++s) base[s] = m[s];
        for (std::size_t i = 0; i < e_slots.size(); ++i) {
            a[e2_slots[i]] = m[e_slots[i]];
            b[e_slots[i]] = m[e2_slots[i]];
        }
        // base * (e block) * (e' block) maps to base * a * b, where a holds primed and b unprimed factors
        const int sign = product_sign(*algebra, a, b);
        Monomial swapped = base;
        for (std::size_t s = algebra->nvars(); s < algebra->width(); ++s) swapped[s] = a[s] + b[s];
        out.add_term(swapped, c * sign);
    }
    return out;
}

SelfIntersection build_self_intersection(const KoszulData& k) {
    SelfIntersection si;
    si.koszul = k;
    std::vector<Generator> gens = k.algebra->generators();
    const std::size_t r = gens.size();
    for (std::size_t i = 0; i < r; ++i) gens.push_back({gens[i].name + "'", -1, gens[i].weight});
    si.algebra = Algebra::make(k.algebra->variables(), std::move(gens));
    const auto nv = si.algebra->nvars();
    si.q = Derivation(si.algebra, 1);
    for (std::size_t i = 0; i < r; ++i) {
        si.e_slots.push_back(nv + i);
        si.e2_slots.push_back(nv + r + i);
        const Element s = transfer(k.base_section[i], si.algebra);
        si.q.set_slot(nv + i, s).set_slot(nv + r + i, s);
        Monomial a = si.algebra->unit(), b = si.algebra->unit();
        a[nv + i] = 1;
        b[nv + r + i] = 1;
        si.diagonal_generators.push_back(Element(si.algebra, a) - Element(si.algebra, b));
    }
    return si;
}

SlicedComplex self_intersection_complex(const SelfIntersection& si, int w) {
    SliceBasis basis(w, slice_monomials(*si.algebra, w));
    return slice_complex(si.algebra, si.q, basis);
}

namespace {

// Span of J^{k+1} in each degree of the weight-w slice: base-ring monomials times products of
// k+1 distinct u_i times arbitrary monomials in the odd generators.
std::map<int, Echelon> diagonal_power_slice(const SelfIntersection& si, const SliceBasis& basis, int k) {
    std::map<int, Echelon> out;
    for (const auto& [deg, list] : basis.by_degree) out.emplace(deg, Echelon(list.size()));
    const std::size_t r = si.diagonal_generators.size();
    if (static_cast<std::size_t>(k + 1) > r) return out;
    std::vector<Element> products;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        if (std::popcount(mask) != k + 1) continue;
        Element p = Element::constant(si.algebra, 1);
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (1u << i)) p = p * si.diagonal_generators[i];
        products.push_back(std::move(p));
    }
    for (const auto& p : products) {
        const int pw = *p.weight();
        const int pd = *p.degree();
        for (const auto& [deg, list] : slice_monomials(*si.algebra, basis.weight - pw)) {
            if (!out.count(deg + pd)) continue;
            for (const auto& m : list) {
                Element t = Element(si.algebra, m) * p;
                if (!t.is_zero()) out.at(deg + pd).insert(basis.coords(deg + pd, t));
            }
        }
    }
    return out;
}

std::map<int, std::size_t> dims_of(const CohomologyResult& h) {
    std::map<int, std::size_t> out;
    for (const auto& d : h.degrees) out[d.degree] = d.dim;
    return out;
}

}  // namespace

SlicedComplex diagonal_quotient_complex(const SelfIntersection& si, int k, int w) {
    SliceBasis basis(w, slice_monomials(*si.algebra, w));
    SlicedComplex full = slice_complex(si.algebra, si.q, basis);
    auto sub = diagonal_power_slice(si, basis, k);
    std::vector<Echelon> spans;
    for (int n = full.lo; n <= full.hi(); ++n)
        spans.push_back(sub.count(n) ? sub.at(n) : Echelon(full.dim(n)));
    return quotient_complex(full, spans);
}

TorReport tor_dims(const SelfIntersection& si, int w_max) {
    TorReport rep;
    for (int w = 0; w <= w_max; ++w) {
        SliceBasis basis(w, slice_monomials(*si.algebra, w));
        SlicedComplex c = slice_complex(si.algebra, si.q, basis);
        auto h = cohomology(c, true);
        auto& bw = rep.by_weight[w];
        for (const auto& d : h.degrees) {
            bw[d.degree] = d.dim;
            rep.total[d.degree] += d.dim;
            if (d.dim == 0) continue;
            // The swap acts on the slice; its image of the cocycles must again span the same cohomology.
            Echelon boundaries_plus_cocycles(basis.dim(d.degree));
            if (c.dim(d.degree - 1) > 0) {
                RatMatrix bd = c.d(d.degree - 1);
                for (std::size_t j = 0; j < bd.cols(); ++j) boundaries_plus_cocycles.insert(bd.column(j));
            }
            for (const auto& v : d.representatives) boundaries_plus_cocycles.insert(v);
            for (const auto& v : d.representatives) {
                Element sw = si.swap(basis.element(si.algebra, d.degree, v));
                Vec sv = basis.coords(d.degree, sw);
                if (!is_zero(c.d(d.degree).apply(sv)) || !boundaries_plus_cocycles.contains(sv))
                    rep.swap_symmetric = false;
            }
        }
    }
    return rep;
}

CompletionReport verify_completion(const SelfIntersection& si, int k_max, int w_max) {
    CompletionReport rep;
    rep.k_max = k_max;
    std::vector<std::map<int, std::size_t>> full;
    for (int w = 0; w <= w_max; ++w) {
        SliceBasis basis(w, slice_monomials(*si.algebra, w));
        full.push_back(dims_of(cohomology(slice_complex(si.algebra, si.q, basis), false)));
    }
    for (int k = 0; k <= k_max; ++k) {
        bool agree = true;
        auto& tot = rep.totals[k];
        for (int w = 0; w <= w_max; ++w) {
            auto q = dims_of(cohomology(diagonal_quotient_complex(si, k, w), false));
            std::set<int> degs;
            for (const auto& [d, v] : full[w]) degs.insert(d);
            for (const auto& [d, v] : q) degs.insert(d);
            for (int d : degs) {
                const std::size_t a = full[w].count(d) ? full[w].at(d) : 0;
                const std::size_t b = q.count(d) ? q.at(d) : 0;
                tot[d].first += a;
                tot[d].second += b;
                if (a != b) agree = false;
            }
        }
        rep.agrees[k] = agree;
    }
    for (int k = k_max; k >= 0 && rep.agrees[k]; --k) rep.smallest_agreeing = k;
    return rep;
}

}  // namespace dsi
