#include "common.hpp"

namespace dsi {

using detail::PairIndex;
using detail::popcount;

namespace {

// Endomorphisms of degree n and weight w: f(E^beta) = m with deg(m) = n - |beta|, wt(m) = w + w_beta.
PairIndex end_basis(const KoszulData& k, int w, int n) {
    PairIndex idx;
    for (unsigned beta = 0; beta < (1u << k.rank()); ++beta)
        for (const auto& m : detail::algebra_slice(k.algebra, w + detail::mask_weight(k, beta), n - popcount(beta)))
            idx.add(beta, m);
    return idx;
}

// Split an element of A as sum_delta c_delta E^delta with c_delta in O_Y (kept inside A).
std::map<unsigned, Element> split_exterior(const KoszulData& k, const Element& x) {
    std::map<unsigned, Element> out;
    const auto nv = k.algebra->nvars();
    for (const auto& [m, c] : x.terms()) {
        unsigned delta = 0;
        Monomial base = m;
        for (std::size_t i = 0; i < k.rank(); ++i) {
            if (m[nv + i]) delta |= 1u << i;
            base[nv + i] = 0;
        }
        auto [it, fresh] = out.try_emplace(delta, k.algebra);
        it->second.add_term(base, c);
    }
    return out;
}

// Images f(E^gamma) of an endomorphism given by its table, extended O_Y-linearly to x.
Element apply_end(const KoszulData& k, const std::map<unsigned, Element>& table, const Element& x) {
    Element out(k.algebra);
    for (const auto& [delta, c] : split_exterior(k, x)) {
        auto it = table.find(delta);
        if (it != table.end()) out += c * it->second;
    }
    return out;
}

std::map<unsigned, Element> end_differential(const KoszulData& k, const std::map<unsigned, Element>& f, int deg) {
    std::map<unsigned, Element> out;
    for (unsigned gamma = 0; gamma < (1u << k.rank()); ++gamma) {
        Element v(k.algebra);
        if (auto it = f.find(gamma); it != f.end()) v += k.q.apply(it->second);
        v -= apply_end(k, f, k.q.apply(detail::exterior_monomial(k, gamma))).scaled(deg % 2 ? -1 : 1);
        if (!v.is_zero()) out[gamma] = v;
    }
    return out;
}

Vec end_coords(const PairIndex& idx, const std::map<unsigned, Element>& f) {
    Vec v = zero_vec(idx.size());
    for (const auto& [beta, x] : f)
        for (const auto& [m, c] : x.terms()) {
            auto row = idx.find(beta, m);
            if (!row) throw SliceError("endomorphism value outside the slice");
            v[*row] += c;
        }
    return v;
}

std::pair<int, int> degree_range(const KoszulData& k) {
    const int r = static_cast<int>(k.rank());
    return {-r, r};
}

}  // namespace

SlicedComplex end_complex_slice(const KoszulData& k, int w) {
    auto [lo, hi] = degree_range(k);
    SlicedComplex c;
    c.lo = lo;
    std::vector<PairIndex> bases;
    for (int n = lo; n <= hi; ++n) {
        bases.push_back(end_basis(k, w, n));
        c.dims.push_back(bases.back().size());
        std::vector<std::string> labels;
        for (const auto& [beta, m] : bases.back().items)
            labels.push_back(detail::exterior_monomial(k, beta).str() + " -> " + k.algebra->format(m));
        c.labels.push_back(std::move(labels));
    }
    for (int n = lo; n < hi; ++n) {
        const auto& src = bases[n - lo];
        const auto& dst = bases[n - lo + 1];
        RatMatrix d(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            const auto& [beta, m] = src.items[j];
            Vec v = end_coords(dst, end_differential(k, {{beta, Element(k.algebra, m)}}, n));
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0) d.set(i, j, v[i]);
        }
        c.diff.push_back(std::move(d));
    }
    return c;
}

EndReport end_complex(const TruncatedUEA& u, int w_lo, int w_hi) {
    EndReport rep;
    rep.w_lo = w_lo;
    rep.w_hi = w_hi;
    const auto& k = u.tangent.koszul;
    const auto& A = k.algebra;
    auto [lo, hi] = degree_range(k);
    const unsigned full = (1u << k.rank());

    for (int w = w_lo; w <= w_hi; ++w) {
        SlicedComplex ec = end_complex_slice(k, w);
        auto eh = cohomology(ec, false);
        for (const auto& d : eh.degrees) {
            rep.h[w][d.degree] = d.dim;
            rep.ext[d.degree] += d.dim;
            if ((w == w_lo || w == w_hi) && d.dim != 0) rep.stabilized = false;
        }

        // U^{<=k} slice with differential, and its image under P -> (x -> P(x)).
        SlicedComplex uc;
        uc.lo = lo;
        std::vector<PairIndex> ub;
        for (int n = lo; n <= hi; ++n) {
            PairIndex idx;
            for (unsigned mask = 0; mask < full; ++mask) {
                if (popcount(mask) > u.order) continue;
                for (const auto& m : detail::algebra_slice(A, w + detail::mask_weight(k, mask), n - popcount(mask)))
                    idx.add(mask, m);
            }
            uc.dims.push_back(idx.size());
            uc.labels.emplace_back();
            ub.push_back(std::move(idx));
        }
        auto uea_coords = [&](const PairIndex& idx, const UeaElement& p) {
            Vec v = zero_vec(idx.size());
            for (const auto& [mask, c] : p.terms)
                for (const auto& [m, coef] : c.terms()) v[*idx.find(mask, m)] += coef;
            return v;
        };
        auto image_table = [&](const UeaElement& p) {
            std::map<unsigned, Element> f;
            for (unsigned gamma = 0; gamma < full; ++gamma) {
                Element v = u.act(p, detail::exterior_monomial(k, gamma));
                if (!v.is_zero()) f[gamma] = v;
            }
            return f;
        };
        for (int n = lo; n < hi; ++n) {
            RatMatrix d(ub[n - lo + 1].size(), ub[n - lo].size());
            for (std::size_t j = 0; j < ub[n - lo].size(); ++j) {
                const auto& [mask, m] = ub[n - lo].items[j];
                UeaElement p = u.monomial(Element(A, m), mask);
                Vec v = uea_coords(ub[n - lo + 1], u.differential(p));
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (v[i] != 0) d.set(i, j, v[i]);
                // chain map: image(dP) = d(image(P))
                auto lhs = image_table(u.differential(p));
                auto rhs = end_differential(k, image_table(p), n);
                if (end_coords(end_basis(k, w, n + 1), lhs) != end_coords(end_basis(k, w, n + 1), rhs))
                    rep.chain_map = false;
            }
            uc.diff.push_back(std::move(d));
        }
        auto uh = cohomology(uc, true);
        for (const auto& d : uh.degrees) {
            rep.uea_h[d.degree] += d.dim;
            if (d.dim == 0) continue;
            const auto ebasis = end_basis(k, w, d.degree);
            Echelon span(ebasis.size());
            if (d.degree > lo) {
                const RatMatrix& bd = ec.d(d.degree - 1);
                for (std::size_t j = 0; j < bd.cols(); ++j) span.insert(bd.column(j));
            }
            const std::size_t before = span.rank();
            for (const auto& rv : d.representatives) {
                UeaElement p;
                for (std::size_t i = 0; i < rv.size(); ++i)
                    if (rv[i] != 0) {
                        const auto& [mask, m] = ub[d.degree - lo].items[i];
                        p = u.add(p, u.monomial(Element(A, m, rv[i]), mask));
                    }
                span.insert(end_coords(ebasis, image_table(p)));
            }
            rep.uea_image_rank[d.degree] += span.rank() - before;
        }
    }
    return rep;
}

}  // namespace dsi
