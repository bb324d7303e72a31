#include "common.hpp"

namespace dsi {

using detail::popcount;

bool JetElement::operator==(const JetElement& o) const {
    auto nonzero = [](const JetElement& j) {
        std::size_t n = 0;
        for (const auto& [m, v] : j.values) n += !v.is_zero();
        return n;
    };
    if (nonzero(*this) != nonzero(o)) return false;
    for (const auto& [m, v] : values) {
        if (v.is_zero()) continue;
        auto it = o.values.find(m);
        if (it == o.values.end() || !(it->second == v)) return false;
    }
    return true;
}

namespace {

void put(JetElement& j, unsigned mask, const Element& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = j.values.try_emplace(mask, v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) j.values.erase(it);
    }
}

int inversion_sign(unsigned beta, unsigned gamma, std::size_t r) {
    int inv = 0;
    for (std::size_t g = 0; g < r; ++g)
        if (gamma & (1u << g)) inv += popcount(beta & ~((2u << g) - 1));
    return inv % 2 ? -1 : 1;
}

}  // namespace

JetElement TruncatedJet::left_unit(const Element& a) const {
    JetElement j;
    put(j, 0, a);
    return j;
}

JetElement TruncatedJet::right_unit(const Element& a) const {
    JetElement j;
    for (unsigned mask = 0; mask < (1u << uea.tangent.rank()); ++mask)
        if (popcount(mask) <= uea.order) put(j, mask, uea.act(uea.monomial(Element::constant(uea.tangent.algebra, 1), mask), a));
    return j;
}

std::optional<int> TruncatedJet::degree(const JetElement& j) const {
    std::optional<int> d;
    for (const auto& [mask, v] : j.values) {
        auto vd = v.degree();
        if (!vd) {
            if (v.is_zero()) continue;
            return std::nullopt;
        }
        if (d && *d != *vd - popcount(mask)) return std::nullopt;
        d = *vd - popcount(mask);
    }
    return d;
}

JetElement TruncatedJet::multiply(const JetElement& a, const JetElement& b) const {
    const std::size_t r = uea.tangent.rank();
    const int da = degree(a).value_or(0);
    JetElement out;
    for (const auto& [beta, x] : a.values)
        for (const auto& [gamma, y] : b.values) {
            if (beta & gamma) continue;
            if (popcount(beta | gamma) > uea.order) continue;
            const int s = inversion_sign(beta, gamma, r) * ((da * popcount(gamma)) % 2 ? -1 : 1);
            put(out, beta | gamma, (x * y).scaled(s));
        }
    return out;
}

Element TruncatedJet::evaluate(const JetElement& j, const UeaElement& p) const {
    const auto& A = uea.tangent.algebra;
    Element out(A);
    for (const auto& [mask, c] : p.terms)
        if (auto it = j.values.find(mask); it != j.values.end()) out += c * it->second;
    return out;
}

JetElement TruncatedJet::differential(const JetElement& a) const {
    // <P, d phi> = (-1)^{|P|} (Q <P, phi> - <dP, phi>)
    const auto& A = uea.tangent.algebra;
    JetElement out;
    for (unsigned mask = 0; mask < (1u << uea.tangent.rank()); ++mask) {
        if (popcount(mask) > uea.order) continue;
        Element v = -evaluate(a, uea.differential(uea.monomial(Element::constant(A, 1), mask)));
        if (auto it = a.values.find(mask); it != a.values.end()) v += uea.tangent.koszul.q.apply(it->second);
        put(out, mask, v.scaled(popcount(mask) % 2 ? -1 : 1));
    }
    return out;
}

TruncatedJet build_jets(const TruncatedUEA& u) { return TruncatedJet{u}; }

JetElement jet_comparison(const TruncatedJet& j, const SelfIntersection& si, const Element& x) {
    const auto& A = j.uea.tangent.algebra;
    const std::size_t r = si.e_slots.size();
    JetElement out;
    for (const auto& [m, c] : x.terms()) {
        // canonical order is base * e-block * e'-block, i.e. already a (x) a'
        Monomial left = A->unit(), right = A->unit();
        for (std::size_t s = 0; s < si.algebra->nvars(); ++s) left[s] = m[s];
        for (std::size_t i = 0; i < r; ++i) {
            left[A->nvars() + i] = m[si.e_slots[i]];
            right[A->nvars() + i] = m[si.e2_slots[i]];
        }
        JetElement t = j.multiply(j.left_unit(Element(A, left, c)), j.right_unit(Element(A, right)));
        for (const auto& [mask, v] : t.values) put(out, mask, v);
    }
    return out;
}

namespace {

// Jet slice: values phi(d^alpha) of weight w - w_alpha and degree n + |alpha|.
detail::PairIndex jet_basis(const TruncatedJet& j, int w, int n) {
    detail::PairIndex idx;
    const auto& k = j.uea.tangent.koszul;
    for (unsigned mask = 0; mask < (1u << k.rank()); ++mask) {
        if (popcount(mask) > j.uea.order) continue;
        for (const auto& m : detail::algebra_slice(k.algebra, w - detail::mask_weight(k, mask), n + popcount(mask)))
            idx.add(mask, m);
    }
    return idx;
}

Vec jet_coords(const detail::PairIndex& idx, const JetElement& j) {
    Vec v = zero_vec(idx.size());
    for (const auto& [mask, val] : j.values)
        for (const auto& [m, c] : val.terms()) {
            auto row = idx.find(mask, m);
            if (!row) throw SliceError("jet value outside the slice");
            v[*row] += c;
        }
    return v;
}

}  // namespace

JetReport check_jet_comparison(const TruncatedJet& j, const SelfIntersection& si, int w_max, unsigned seed) {
    JetReport rep;
    rep.order = j.uea.order;
    const auto& A = j.uea.tangent.algebra;
    const int k = j.uea.order;
    const int r = static_cast<int>(si.e_slots.size());

    for (int w = 0; w <= w_max; ++w) {
        SliceBasis src(w, slice_monomials(*si.algebra, w));
        SlicedComplex quotient = diagonal_quotient_complex(si, k, w);
        for (int n = -2 * r; n <= 0; ++n) {
            const std::size_t qdim = n >= quotient.lo && n <= quotient.hi() ? quotient.dim(n) : 0;
            rep.quotient_dims[w][n] = qdim;
            auto idx = jet_basis(j, w, n);
            Echelon image(idx.size());
            if (auto it = src.by_degree.find(n); it != src.by_degree.end())
                for (const auto& m : it->second) {
                    const Element x(si.algebra, m);
                    const JetElement cx = jet_comparison(j, si, x);
                    image.insert(jet_coords(idx, cx));
                    if (!(jet_comparison(j, si, si.q.apply(x)) == j.differential(cx))) {
                        rep.chain_map = false;
                        rep.failures.push_back("chain map fails on " + x.str());
                    }
                }
            rep.ranks[w][n] = {image.rank(), idx.size()};
            if (image.rank() != idx.size() || idx.size() != qdim) {
                rep.isomorphism = false;
                rep.failures.push_back("weight " + std::to_string(w) + " degree " + std::to_string(n) + ": rank " +
                                       std::to_string(image.rank()) + ", jets " + std::to_string(idx.size()) +
                                       ", quotient " + std::to_string(qdim));
            }
        }
    }

    // J^{k+1} is generated by products of k+1 distinct u_i.
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        if (popcount(mask) != k + 1) continue;
        Element p = Element::constant(si.algebra, 1);
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) p = p * si.diagonal_generators[i];
        if (!(jet_comparison(j, si, p) == JetElement{})) rep.ideal_in_kernel = false;
    }

    // Units: a (x) 1 and 1 (x) a.
    for (std::size_t s = 0; s < A->width(); ++s) {
        Monomial m = A->unit();
        m[s] = 1;
        const Element a(A, m);
        const Element left = transfer(a, si.algebra);
        Element right = left;
        if (s >= A->nvars()) {
            Monomial mm = si.algebra->unit();
            mm[si.e2_slots[s - A->nvars()]] = 1;
            right = Element(si.algebra, mm);
        }
        if (!(jet_comparison(j, si, left) == j.left_unit(a))) rep.units = false;
        if (!(jet_comparison(j, si, right) == j.right_unit(a))) rep.units = false;
    }

    std::mt19937 rng(seed);
    for (int trial = 0; trial < 10; ++trial) {
        Element x = detail::random_element(rng, si.algebra, 1 + static_cast<int>(rng() % 2), -static_cast<int>(rng() % 2));
        Element y = detail::random_element(rng, si.algebra, 1, -1);
        if (!(jet_comparison(j, si, x * y) == j.multiply(jet_comparison(j, si, x), jet_comparison(j, si, y))))
            rep.multiplicative = false;
        Element a = detail::random_element(rng, A, 1, -1), b = detail::random_element(rng, A, 2, -1);
        if (!(j.right_unit(a * b) == j.multiply(j.right_unit(a), j.right_unit(b)))) rep.units = false;
        if (!(j.left_unit(a * b) == j.multiply(j.left_unit(a), j.left_unit(b)))) rep.units = false;
    }
    return rep;
}

}  // namespace dsi
