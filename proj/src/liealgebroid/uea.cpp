#include "common.hpp"

#include <sstream>

namespace dsi {

using detail::popcount;

bool UeaElement::is_zero() const { return terms.empty(); }

bool UeaElement::operator==(const UeaElement& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (const auto& [mask, c] : terms) {
        auto it = o.terms.find(mask);
        if (it == o.terms.end() || !(it->second == c)) return false;
    }
    return true;
}

namespace {

void accumulate(UeaElement& into, unsigned mask, const Element& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = into.terms.try_emplace(mask, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) into.terms.erase(it);
    }
}

// Sign of d_i d^mask rewritten as d^{mask + i}; zero when i is already present.
int insertion_sign(unsigned mask, std::size_t i) {
    if (mask & (1u << i)) return 0;
    return popcount(mask & ((1u << i) - 1)) % 2 ? -1 : 1;
}

}  // namespace

UeaElement TruncatedUEA::from_algebra(const Element& a) const { return monomial(a, 0); }

UeaElement TruncatedUEA::monomial(const Element& a, unsigned mask) const {
    UeaElement out;
    if (popcount(mask) <= order) accumulate(out, mask, a);
    return out;
}

UeaElement TruncatedUEA::from_field(const VectorField& v) const {
    UeaElement out;
    for (std::size_t j = 0; j < v.size(); ++j) accumulate(out, 1u << j, v[j]);
    return out;
}

UeaElement TruncatedUEA::add(const UeaElement& a, const UeaElement& b) const {
    UeaElement out = a;
    for (const auto& [m, c] : b.terms) accumulate(out, m, c);
    return out;
}

UeaElement TruncatedUEA::scaled(const UeaElement& a, const Rational& c) const {
    UeaElement out;
    for (const auto& [m, x] : a.terms) accumulate(out, m, x.scaled(c));
    return out;
}

UeaElement TruncatedUEA::multiply(const UeaElement& a, const UeaElement& b) const {
    const auto& A = tangent.algebra;
    UeaElement out;
    for (const auto& [alpha, c] : a.terms) {
        UeaElement y = b;
        // d^alpha = d_{i1} ... d_{ip}: apply the rightmost factor first
        for (int i = static_cast<int>(tangent.rank()) - 1; i >= 0; --i) {
            if (!(alpha & (1u << i))) continue;
            UeaElement next;
            for (const auto& [beta, x] : y.terms)
                for (const auto& [m, coef] : x.terms()) {
                    const Element term(A, m, coef);
                    accumulate(next, beta, tangent.coordinate_fields[i].apply(term));
                    const int s = insertion_sign(beta, i);
                    if (s == 0 || popcount(beta) + 1 > order) continue;
                    const int parity = A->degree(m) % 2 ? -1 : 1;
                    accumulate(next, beta | (1u << i), term.scaled(s * parity));
                }
            y = std::move(next);
        }
        for (const auto& [beta, x] : y.terms) accumulate(out, beta, c * x);
    }
    return out;
}

UeaElement TruncatedUEA::differential(const UeaElement& a) const {
    const auto& A = tangent.algebra;
    UeaElement out;
    for (const auto& [alpha, c] : a.terms) {
        accumulate(out, alpha, tangent.koszul.q.apply(c));
        // d(d^alpha) = sum_j (-1)^j d_{i1}..[Q, d_{ij}]..d_{ip}
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < tangent.rank(); ++i)
            if (alpha & (1u << i)) idx.push_back(i);
        UeaElement dd;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            unsigned prefix = 0, suffix = 0;
            for (std::size_t l = 0; l < j; ++l) prefix |= 1u << idx[l];
            for (std::size_t l = j + 1; l < idx.size(); ++l) suffix |= 1u << idx[l];
            const Element one = Element::constant(A, 1);
            UeaElement t = multiply(multiply(monomial(one, prefix), from_field(tangent.differential_table[idx[j]])),
                                    monomial(one, suffix));
            dd = add(dd, scaled(t, j % 2 ? -1 : 1));
        }
        for (const auto& [m, coef] : c.terms()) {
            const int parity = A->degree(m) % 2 ? -1 : 1;
            out = add(out, multiply(from_algebra(Element(A, m, coef * parity)), dd));
        }
    }
    return out;
}

std::optional<int> TruncatedUEA::degree(const UeaElement& a) const {
    std::optional<int> d;
    for (const auto& [mask, c] : a.terms) {
        auto cd = c.degree();
        if (!cd || (d && *d != *cd + popcount(mask))) return std::nullopt;
        d = *cd + popcount(mask);
    }
    return d;
}

int TruncatedUEA::filtration(const UeaElement& a) const {
    int f = -1;
    for (const auto& [mask, c] : a.terms) f = std::max(f, popcount(mask));
    return f;
}

Element TruncatedUEA::act(const UeaElement& p, const Element& x) const {
    Element out(tangent.algebra);
    for (const auto& [alpha, c] : p.terms) {
        Element y = x;
        for (int i = static_cast<int>(tangent.rank()) - 1; i >= 0; --i)
            if (alpha & (1u << i)) y = tangent.coordinate_fields[i].apply(y);
        out += c * y;
    }
    return out;
}

std::string TruncatedUEA::str(const UeaElement& a) const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, c] : a.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (std::size_t i = 0; i < tangent.rank(); ++i)
            if (mask & (1u << i)) os << "*d/d" << tangent.koszul.generator_name(i);
    }
    return os.str();
}

std::map<std::pair<unsigned, unsigned>, Element> TruncatedUEA::coproduct(const UeaElement& a) const {
    std::map<std::pair<unsigned, unsigned>, Element> out;
    for (const auto& [alpha, c] : a.terms) {
        for (unsigned beta = alpha;; beta = (beta - 1) & alpha) {
            const unsigned gamma = alpha & ~beta;
            // pairs (g in gamma, b in beta) with g < b change sign
            int inversions = 0;
            for (std::size_t g = 0; g < tangent.rank(); ++g)
                if (gamma & (1u << g)) inversions += popcount(beta & ~((2u << g) - 1));
            auto [it, fresh] = out.try_emplace({beta, gamma}, tangent.algebra);
            it->second += c.scaled(inversions % 2 ? -1 : 1);
            if (it->second.is_zero()) out.erase(it);
            if (beta == 0) break;
        }
    }
    return out;
}

TruncatedUEA build_uea(const TangentAlgebroid& t, int order) {
    if (order < 0 || order > 2) throw std::invalid_argument("enveloping algebra order must be 0, 1 or 2");
    for (const auto& row : t.bracket_table)
        for (const auto& v : row)
            for (const auto& c : v)
                if (!c.is_zero()) throw std::invalid_argument("coordinate fields must commute");
    return TruncatedUEA{t, order};
}

namespace {

UeaElement random_uea(std::mt19937& rng, const TruncatedUEA& u, int weight, int degree, int max_order) {
    UeaElement out;
    const auto& k = u.tangent.koszul;
    for (unsigned mask = 0; mask < (1u << u.tangent.rank()); ++mask) {
        if (popcount(mask) > max_order) continue;
        Element c = detail::random_element(rng, u.tangent.algebra, weight + detail::mask_weight(k, mask),
                                           degree - popcount(mask));
        out = u.add(out, u.monomial(c, mask));
    }
    return out;
}

using Triple = std::map<std::array<unsigned, 3>, Element>;

void add_triple(Triple& t, std::array<unsigned, 3> key, const Element& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

bool same(const Triple& a, const Triple& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end() || !(it->second == v)) return false;
    }
    return true;
}

}  // namespace

UeaReport check_uea(const TruncatedUEA& u, int w_max, unsigned seed) {
    UeaReport rep;
    const auto& t = u.tangent;
    const auto& A = t.algebra;
    const auto& k = t.koszul;
    const std::size_t r = t.rank();
    std::mt19937 rng(seed);
    const Element one = Element::constant(A, 1);

    // PBW: associated graded of the span of products a * d_{i1} * ... * d_{ij} versus Lambda^j_A g.
    int wmin = 0;
    for (const auto& g : A->generators()) wmin -= g.weight;
    for (int w = wmin; w <= w_max; ++w) {
        detail::PairIndex index;
        for (unsigned mask = 0; mask < (1u << r); ++mask)
            if (popcount(mask) <= u.order)
                for (const auto& m : detail::algebra_slice(A, w + detail::mask_weight(k, mask))) index.add(mask, m);
        Echelon span(index.size());
        std::size_t previous = 0;
        for (int j = 0; j <= u.order; ++j) {
            for (unsigned mask = 0; mask < (1u << r); ++mask) {
                if (popcount(mask) != j) continue;
                UeaElement prod = u.from_algebra(one);
                for (std::size_t i = 0; i < r; ++i)
                    if (mask & (1u << i)) prod = u.multiply(prod, u.from_field(t.field(i, one)));
                for (const auto& m : detail::algebra_slice(A, w + detail::mask_weight(k, mask))) {
                    UeaElement p = u.multiply(u.from_algebra(Element(A, m)), prod);
                    Vec v = zero_vec(index.size());
                    for (const auto& [beta, c] : p.terms)
                        for (const auto& [mono, coef] : c.terms()) v[*index.find(beta, mono)] += coef;
                    span.insert(v);
                }
            }
            rep.graded_dims[w][j] = span.rank() - previous;
            previous = span.rank();
            std::size_t pbw = 0;
            for (unsigned mask = 0; mask < (1u << r); ++mask)
                if (popcount(mask) == j) pbw += detail::algebra_slice(A, w + detail::mask_weight(k, mask)).size();
            rep.pbw_dims[w][j] = pbw;
            if (pbw != rep.graded_dims[w][j]) rep.pbw = false;
        }
    }

    // Defining relations: d x - (-1)^{|x|} x d = d(x), and the A-module structure.
    for (std::size_t i = 0; i < r; ++i) {
        const UeaElement d = u.from_field(t.field(i, one));
        for (std::size_t s = 0; s < A->width(); ++s) {
            Monomial m = A->unit();
            m[s] = 1;
            const Element x(A, m);
            const int parity = A->slot_degree(s) % 2 ? -1 : 1;
            UeaElement lhs = u.add(u.multiply(d, u.from_algebra(x)), u.scaled(u.multiply(u.from_algebra(x), d), -parity));
            if (!(lhs == u.from_algebra(t.coordinate_fields[i].apply(x)))) rep.relations = false;
        }
    }
    for (int trial = 0; trial < 6; ++trial) {
        Element a = detail::random_element(rng, A, 1, 0), b = detail::random_element(rng, A, 1, -1);
        if (!(u.multiply(u.from_algebra(a), u.from_algebra(b)) == u.from_algebra(a * b))) rep.relations = false;
        VectorField v = t.field(rng() % r, detail::random_element(rng, A, 1, 0));
        VectorField av;
        for (const auto& c : v) av.push_back(b * c);
        if (!(u.multiply(u.from_algebra(b), u.from_field(v)) == u.from_field(av))) rep.relations = false;
    }

    // Leibniz, associativity, filtration and coassociativity on random samples.
    for (int trial = 0; trial < 12; ++trial) {
        const int i = static_cast<int>(rng() % (u.order + 1));
        const int j = u.order - i;
        UeaElement p = random_uea(rng, u, static_cast<int>(rng() % 2), static_cast<int>(rng() % 2), i);
        UeaElement q = random_uea(rng, u, static_cast<int>(rng() % 2), static_cast<int>(rng() % 2) - 1, j);
        UeaElement s = random_uea(rng, u, 0, 0, u.order);
        UeaElement pq = u.multiply(p, q);
        if (u.filtration(pq) > i + j) rep.filtration_multiplicative = false;
        if (!(u.multiply(pq, s) == u.multiply(p, u.multiply(q, s)))) rep.associative = false;
        const auto dp = u.degree(p);
        if (dp) {
            UeaElement lhs = u.differential(pq);
            UeaElement rhs = u.add(u.multiply(u.differential(p), q),
                                   u.scaled(u.multiply(p, u.differential(q)), *dp % 2 ? -1 : 1));
            if (!(lhs == rhs)) rep.leibniz = false;
        }
        Triple left, right;
        for (const auto& [bg, c] : u.coproduct(p)) {
            for (const auto& [b2, c2] : u.coproduct(u.monomial(c, bg.first)))
                add_triple(left, {b2.first, b2.second, bg.second}, c2);
            for (const auto& [g2, c3] : u.coproduct(u.monomial(Element::constant(A, 1), bg.second)))
                add_triple(right, {bg.first, g2.first, g2.second}, c * c3);
        }
        if (!same(left, right)) rep.coassociative = false;
    }
    return rep;
}

}  // namespace dsi
