#include "common.hpp"

namespace dsi {

using detail::PairIndex;

Derivation TangentAlgebroid::to_derivation(const VectorField& v) const {
    Derivation d(algebra, degree(v).value_or(1));
    for (std::size_t j = 0; j < rank(); ++j) d.set_slot(algebra->nvars() + j, v[j]);
    return d;
}

VectorField TangentAlgebroid::coordinates(const Derivation& d) const {
    VectorField v;
    for (std::size_t j = 0; j < rank(); ++j) {
        const auto& img = d.image(algebra->nvars() + j);
        v.push_back(img ? *img : Element(algebra));
    }
    return v;
}

VectorField TangentAlgebroid::field(std::size_t i, const Element& coefficient) const {
    VectorField v(rank(), Element(algebra));
    v[i] = coefficient;
    return v;
}

std::optional<int> TangentAlgebroid::degree(const VectorField& v) const {
    std::optional<int> d;
    for (const auto& c : v) {
        if (c.is_zero()) continue;
        auto cd = c.degree();
        if (!cd || (d && *d != *cd + 1)) throw std::invalid_argument("vector field is not homogeneous");
        d = *cd + 1;
    }
    return d;
}

VectorField TangentAlgebroid::bracket(const VectorField& a, const VectorField& b) const {
    return coordinates(commutator(to_derivation(a), to_derivation(b)));
}

VectorField TangentAlgebroid::differential(const VectorField& a) const {
    return coordinates(commutator(koszul.q, to_derivation(a)));
}

TangentAlgebroid build_tangent(const KoszulData& k) {
    TangentAlgebroid t;
    t.koszul = k;
    t.algebra = k.algebra;
    const Element one = Element::constant(k.algebra, 1);
    for (std::size_t i = 0; i < k.rank(); ++i) t.coordinate_fields.push_back(t.to_derivation(t.field(i, one)));
    for (std::size_t i = 0; i < k.rank(); ++i) {
        std::vector<VectorField> row;
        for (std::size_t j = 0; j < k.rank(); ++j) row.push_back(t.bracket(t.field(i, one), t.field(j, one)));
        t.bracket_table.push_back(std::move(row));
        t.differential_table.push_back(t.differential(t.field(i, one)));
    }
    return t;
}

namespace {

int max_generator_weight(const KoszulData& k) {
    int w = 0;
    for (const auto& g : k.algebra->generators()) w = std::max(w, g.weight);
    return w;
}

// Basis of T at weight w: (i, m) with m of weight w + w_i, field degree deg(m) + 1.
std::map<int, PairIndex> tangent_basis(const TangentAlgebroid& t, int w) {
    std::map<int, PairIndex> out;
    const int r = static_cast<int>(t.rank());
    for (int n = 1 - r; n <= 1; ++n) out[n];
    for (std::size_t i = 0; i < t.rank(); ++i)
        for (const auto& m : detail::algebra_slice(t.algebra, w + t.algebra->generators()[i].weight))
            out[t.algebra->degree(m) + 1].add(static_cast<unsigned>(i), m);
    return out;
}

std::size_t quotient_dim(const KoszulData& k, int w) {
    if (w < 0) return 0;
    SliceBasis b(w, slice_monomials(*k.base, w));
    return b.dim(0) - ideal_slice(k.base, k.base_section, b).rank();
}

}  // namespace

SlicedComplex tangent_complex(const TangentAlgebroid& t, int w) {
    auto basis = tangent_basis(t, w);
    SlicedComplex c;
    c.lo = basis.begin()->first;
    for (const auto& [n, idx] : basis) {
        c.dims.push_back(idx.size());
        std::vector<std::string> labels;
        for (const auto& [i, m] : idx.items)
            labels.push_back(t.algebra->format(m) + "*d/d" + t.koszul.generator_name(i));
        c.labels.push_back(std::move(labels));
    }
    for (auto it = basis.begin(); std::next(it) != basis.end(); ++it) {
        const auto& src = it->second;
        const auto& dst = std::next(it)->second;
        RatMatrix d(dst.size(), src.size());
        for (std::size_t col = 0; col < src.size(); ++col) {
            const auto& [i, m] = src.items[col];
            VectorField img = t.differential(t.field(i, Element(t.algebra, m)));
            for (std::size_t j = 0; j < t.rank(); ++j)
                for (const auto& [mono, coef] : img[j].terms()) {
                    auto row = dst.find(static_cast<unsigned>(j), mono);
                    if (!row) throw SliceError("[Q,-] leaves the tangent slice");
                    d.set(*row, col, coef);
                }
        }
        c.diff.push_back(std::move(d));
    }
    return c;
}

TangentReport check_tangent(const TangentAlgebroid& t, int w_max) {
    TangentReport rep;
    for (int w = -max_generator_weight(t.koszul); w <= w_max; ++w) {
        auto h = cohomology(tangent_complex(t, w), false);
        if (!h.ok()) {
            rep.square_zero = false;
            continue;
        }
        std::size_t expected = 0;
        for (const auto& g : t.algebra->generators()) expected += quotient_dim(t.koszul, w + g.weight);
        rep.expected_h1[w] = expected;
        for (const auto& d : h.degrees) {
            rep.h[w][d.degree] = d.dim;
            if (d.degree != 1 && d.dim != 0) rep.concentrated = false;
        }
        if (rep.h[w][1] != expected) rep.matches_normal_bundle = false;
    }
    return rep;
}

namespace {

// Multisets of generator indices stored as exponent vectors.
void multisets(std::size_t r, int size, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (cur.size() == r) {
        if (size == 0) out.push_back(cur);
        return;
    }
    for (int a = size; a >= 0; --a) {
        cur.push_back(a);
        multisets(r, size - a, cur, out);
        cur.pop_back();
    }
}

struct CochainBasis {
    std::vector<std::pair<std::vector<int>, Monomial>> items;
    std::map<std::pair<std::vector<int>, Monomial>, std::size_t> index;
};

}  // namespace

CeReport ce_consistency(const TangentAlgebroid& t, const DeRhamComplex& dr, int k, int w_max) {
    CeReport rep;
    rep.k = k;
    const std::size_t r = t.rank();
    const auto& A = t.algebra;
    const int rdeg = static_cast<int>(r);

    std::vector<std::vector<std::vector<int>>> tuples(k + 2);
    for (int p = 0; p <= k + 1; ++p) {
        std::vector<int> cur;
        multisets(r, p, cur, tuples[p]);
    }
    auto tuple_weight = [&](const std::vector<int>& b) {
        int w = 0;
        for (std::size_t i = 0; i < r; ++i) w += b[i] * A->generators()[i].weight;
        return w;
    };
    // Contraction by d/de_i on the de Rham algebra: f_i -> 1.
    std::vector<Derivation> contraction;
    for (std::size_t i = 0; i < r; ++i) {
        Derivation c(dr.algebra, 0);
        for (std::size_t j = 0; j < r; ++j) {
            c.set_slot(dr.e_slots[j], Element(dr.algebra));
            c.set_slot(dr.f_slots[j], i == j ? Element::constant(dr.algebra, 1) : Element(dr.algebra));
        }
        contraction.push_back(std::move(c));
    }

    for (int w = 0; w <= w_max; ++w) {
        std::map<int, CochainBasis> cb;
        for (int p = 0; p <= k; ++p)
            for (const auto& b : tuples[p])
                for (const auto& m : detail::algebra_slice(A, w - tuple_weight(b))) {
                    auto& B = cb[A->degree(m)];
                    B.index.emplace(std::make_pair(b, m), B.items.size());
                    B.items.emplace_back(b, m);
                }
        SliceBasis omega = truncated_slice(dr, k, w);
        SlicedComplex oc = truncated_complex(dr, k, w);

        // Cochain value table: tuple -> element of A.
        using Values = std::map<std::vector<int>, Element>;
        auto to_coords = [&](int n, const Values& vals) {
            Vec v = zero_vec(cb[n].items.size());
            for (const auto& [b, e] : vals)
                for (const auto& [mono, c] : e.terms()) {
                    auto it = cb[n].index.find({b, mono});
                    if (it == cb[n].index.end()) throw SliceError("cochain value outside the slice");
                    v[it->second] += c;
                }
            return v;
        };
        auto evaluate = [&](const Element& form) {
            Values vals;
            for (const auto& [m, c] : form.terms()) {
                std::vector<int> alpha(r);
                for (std::size_t i = 0; i < r; ++i) alpha[i] = m[dr.f_slots[i]];
                Element x(dr.algebra, m, c);
                for (std::size_t i = 0; i < r; ++i)
                    for (int a = 0; a < alpha[i]; ++a) x = contraction[i].apply(x);
                auto [it, fresh] = vals.try_emplace(alpha, A);
                it->second += transfer(x, A);
            }
            return vals;
        };
        auto field_value = [&](const Values& xi, std::vector<int> b) {
            auto it = xi.find(b);
            return it == xi.end() ? Element(A) : it->second;
        };
        // xi(v, rest) for a vector field v = sum c_q d_q, pulling c_q out of the cochain.
        auto insert_field = [&](const Values& xi, int xi_deg, const VectorField& v, std::vector<int> rest) {
            Element out(A);
            for (std::size_t q = 0; q < r; ++q) {
                if (v[q].is_zero()) continue;
                rest[q] += 1;
                const int s = (v[q].degree().value_or(0) * xi_deg) % 2 ? -1 : 1;
                out += (v[q] * field_value(xi, rest)).scaled(s);
                rest[q] -= 1;
            }
            return out;
        };
        auto d_ce = [&](const Values& xi, int xi_deg) {
            Values out;
            for (int p = 0; p <= k; ++p)
                for (const auto& g : tuples[p]) {
                    // internal part on tuples of the same size
                    Element val(A);
                    if (auto it = xi.find(g); it != xi.end()) val += t.koszul.q.apply(it->second);
                    for (std::size_t i = 0; i < r; ++i) {
                        if (!g[i]) continue;
                        auto rest = g;
                        rest[i] -= 1;
                        val -= insert_field(xi, xi_deg, t.differential_table[i], rest).scaled(g[i]);
                    }
                    // anchor and bracket parts from tuples of size p - 1
                    if (p >= 1) {
                        for (std::size_t i = 0; i < r; ++i) {
                            if (!g[i]) continue;
                            auto rest = g;
                            rest[i] -= 1;
                            val += t.coordinate_fields[i].apply(field_value(xi, rest)).scaled(g[i]);
                        }
                    }
                    if (p >= 2) {
                        for (std::size_t i = 0; i < r; ++i)
                            for (std::size_t j = i; j < r; ++j) {
                                auto rest = g;
                                if (rest[i] < 1) continue;
                                rest[i] -= 1;
                                if (rest[j] < 1) continue;
                                rest[j] -= 1;
                                const Rational pairs = i == j ? Rational(g[i] * (g[i] - 1), 2) : Rational(g[i] * g[j]);
                                val -= insert_field(xi, xi_deg, t.bracket_table[i][j], rest).scaled(pairs);
                            }
                    }
                    if (!val.is_zero()) out[g] = val;
                }
            return out;
        };

        bool agree = true;
        for (int n = -rdeg; n < 0; ++n) {
            const auto& src = omega.by_degree[n];
            const std::size_t dim_n = cb[n].items.size(), dim_n1 = cb[n + 1].items.size();
            if (src.size() != dim_n || omega.dim(n + 1) != dim_n1) {
                agree = false;
                rep.disagreements.push_back("weight " + std::to_string(w) + " degree " + std::to_string(n) +
                                            ": cochain and form slices differ in size");
                continue;
            }
            RatMatrix ev_n(dim_n, src.size()), lhs(dim_n1, src.size()), rhs(dim_n1, src.size());
            const RatMatrix& d_omega = oc.d(n);
            RatMatrix ev_n1(dim_n1, omega.dim(n + 1));
            if (auto it = omega.by_degree.find(n + 1); it != omega.by_degree.end())
                for (std::size_t j = 0; j < it->second.size(); ++j) {
                    Vec v = to_coords(n + 1, evaluate(Element(dr.algebra, it->second[j])));
                    for (std::size_t i = 0; i < v.size(); ++i)
                        if (v[i] != 0) ev_n1.set(i, j, v[i]);
                }
            for (std::size_t j = 0; j < src.size(); ++j) {
                const Values xi = evaluate(Element(dr.algebra, src[j]));
                Vec v = to_coords(n, xi);
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (v[i] != 0) ev_n.set(i, j, v[i]);
                Vec dv = to_coords(n + 1, d_ce(xi, n));
                for (std::size_t i = 0; i < dv.size(); ++i)
                    if (dv[i] != 0) rhs.set(i, j, dv[i]);
            }
            lhs = ev_n1 * d_omega;
            if (!(lhs == rhs)) {
                agree = false;
                rep.disagreements.push_back("weight " + std::to_string(w) + " degree " + std::to_string(n) +
                                            ": ev D != d_CE ev");
            }
            if (rank(ev_n) != dim_n || rank(ev_n1) != dim_n1) {
                agree = false;
                rep.disagreements.push_back("weight " + std::to_string(w) + " degree " + std::to_string(n) +
                                            ": evaluation is not invertible");
            }
        }
        rep.slice_agrees[w] = agree;
        rep.ok = rep.ok && agree;
    }
    return rep;
}

}  // namespace dsi
