#include "dsi/mcgauge.hpp"

#include <set>

namespace dsi {

namespace {

Vec sum(Vec a, const Vec& b, const Rational& s = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

Vec negated(const Vec& a) { return sum(zero_vec(a.size()), a, -1); }

// Terms F^1 = g, F^{k+1} = [g, F^k] of the lower central series, as echelon forms.
std::vector<Echelon> lower_central_series(const NilpotentDgla& g) {
    std::vector<Echelon> out;
    Echelon cur(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) cur.insert(g.basis_vector(i));
    while (true) {
        out.push_back(cur);
        if (cur.rank() == 0) return out;
        Echelon next(g.dim());
        for (const auto& v : cur.basis())
            for (std::size_t i = 0; i < g.dim(); ++i) next.insert(g.bracket(g.basis_vector(i), v));
        if (next.rank() == cur.rank()) throw std::invalid_argument("Lie algebra is not nilpotent");
        cur = std::move(next);
    }
}

// Basis of {x : rho x in F} for a restriction rho: src -> g01.
std::vector<Vec> preimage(const RatMatrix& rho, const Echelon& f) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < rho.cols(); ++j) cols.push_back(f.quotient_coords(rho.column(j)));
    const std::size_t rows = rho.rows() - f.rank();
    return rank_kernel(RatMatrix::from_columns(rows, cols)).kernel;
}

}  // namespace

std::vector<std::string> CechLie::verify() const {
    std::vector<std::string> bad;
    auto check = [&](const NilpotentDgla& g, const RatMatrix& rho, const std::string& tag) {
        if (rho.rows() != g01.dim() || rho.cols() != g.dim()) {
            bad.push_back(tag + " has the wrong shape");
            return;
        }
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = 0; j < g.dim(); ++j) {
                const Vec lhs = rho.apply(g.bracket_of(i, j));
                const Vec rhs = g01.bracket(rho.column(i), rho.column(j));
                if (lhs != rhs) bad.push_back(tag + " does not preserve [" + g.name(i) + "," + g.name(j) + "]");
            }
    };
    for (const auto* g : {&g0, &g1, &g01})
        for (auto& s : g->verify()) bad.push_back(std::move(s));
    check(g0, rho0, "rho0");
    check(g1, rho1, "rho1");
    return bad;
}

TensorDgla CechLie::edge() const { return TensorDgla(g01, CoefficientAlgebra::forms(1)); }
TensorDgla CechLie::group() const { return TensorDgla(g01, CoefficientAlgebra::rationals()); }

TensorDgla::Elem cocycle_to_mc(const CechLie& c, const Vec& t) {
    const auto l = c.edge();
    const auto dt = simplex_forms(1).dt(1);
    auto out = l.zero();
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] != 0) out[i] = dt.scaled(t[i]);
    return out;
}

Vec mc_to_cocycle(const CechLie& c, const TensorDgla::Elem& theta) {
    return holonomy(c.edge(), theta, 0, 1);
}

Vec gauge_cocycle(const CechLie& c, const Vec& a0, const Vec& a1, const Vec& t) {
    return bch(c.g01, bch(c.g01, c.rho0.apply(a0), t), negated(c.rho1.apply(a1)));
}

bool valid_gauge(const CechLie& c, const TwGauge& a) {
    const auto l = c.edge();
    auto deg = l.degree(a.edge);
    if (deg && *deg != 0) return false;
    return l.at_vertex(a.edge, 0) == c.rho0.apply(a.a0) && l.at_vertex(a.edge, 1) == c.rho1.apply(a.a1);
}

TensorDgla::Elem gauge_mc(const CechLie& c, const TwGauge& a, const TensorDgla::Elem& theta) {
    if (!valid_gauge(c, a)) throw std::invalid_argument("gauge element does not restrict to its chart values");
    return gauge(c.edge(), a.edge, theta);
}

TwGauge round_trip_gauge(const CechLie& c, const TensorDgla::Elem& theta) {
    // Y(s) = e^{sT} e^{-a(s)} with Y the transport of theta, so a(s) = log(e^{-sT} Y(s))
    const auto l = c.edge();
    if (!is_mc(l, theta)) throw NotMaurerCartan("round trip of a connection that is not flat");
    const Vec t = mc_to_cocycle(c, theta);
    const auto s = simplex_forms(1).t(1);
    auto minus_st = l.zero();
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] != 0) minus_st[i] = s.scaled(-t[i]);
    return TwGauge{zero_vec(c.g0.dim()), zero_vec(c.g1.dim()), bch(l, minus_st, transport_log(l, theta))};
}

std::optional<std::pair<Vec, Vec>> connect_cocycles(const CechLie& c, const Vec& t, const Vec& t2) {
    const auto series = lower_central_series(c.g01);
    const std::size_t n0 = c.g0.dim(), n1 = c.g1.dim(), n = c.g01.dim();
    Vec a0 = zero_vec(n0), a1 = zero_vec(n1);
    // Step k: corrections whose restrictions lie in F^k act linearly modulo F^{k+1}.
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        const Vec r = sum(t2, gauge_cocycle(c, a0, a1, t), -1);
        if (is_zero(r)) break;
        const auto& fk = series[k];
        const auto& fk1 = series[k + 1];
        const auto d0 = preimage(c.rho0, fk);
        const auto d1 = preimage(c.rho1, fk);
        std::vector<Vec> cols;
        for (const auto& v : d0) cols.push_back(c.rho0.apply(v));
        for (const auto& v : d1) cols.push_back(negated(c.rho1.apply(v)));
        for (const auto& v : fk1.basis()) cols.push_back(v);
        auto x = solve(RatMatrix::from_columns(n, cols), r);
        if (!x) return std::nullopt;
        for (std::size_t i = 0; i < d0.size(); ++i) a0 = sum(a0, d0[i], (*x)[i]);
        for (std::size_t i = 0; i < d1.size(); ++i) a1 = sum(a1, d1[i], (*x)[d0.size() + i]);
    }
    if (gauge_cocycle(c, a0, a1, t) != t2) return std::nullopt;
    return std::pair{a0, a1};
}

CechLie abelian_cech(const CosimplicialDiagram& v, int weight) {
    if (v.depth() != 1 || v.levels[0].size() != 2 || v.levels[1].size() != 1)
        throw std::invalid_argument("abelian_cech needs a two-chart diagram");
    auto slice = [&](const DiagramComponent& comp) {
        auto ms = slice_monomials(*comp.algebra, weight - comp.weight_offset, comp.slice);
        return SliceBasis(weight, std::move(ms));
    };
    auto names = [&](const DiagramComponent& comp, const SliceBasis& b) {
        std::vector<std::string> out;
        if (auto it = b.by_degree.find(0); it != b.by_degree.end())
            for (const auto& m : it->second) out.push_back(comp.name + ":" + comp.algebra->format(m));
        return out;
    };
    const auto& u0 = v.levels[0][0];
    const auto& u1 = v.levels[0][1];
    const auto& u01 = v.levels[1][0];
    const SliceBasis b0 = slice(u0), b1 = slice(u1), b01 = slice(u01);
    CechLie c{NilpotentDgla::abelian(names(u0, b0)), NilpotentDgla::abelian(names(u1, b1)),
              NilpotentDgla::abelian(names(u01, b01)), {}, {}};
    for (int k = 0; k <= 1; ++k) {
        const ComponentMap& cm = v.cofaces[1][k][0];
        const SliceBasis& src = cm.source == 0 ? b0 : b1;
        const auto& alg = v.levels[0][cm.source].algebra;
        RatMatrix m = operator_matrix(src, 0, b01, 0, alg, [&](const Element& x) { return apply_component_map(cm, x); });
        (cm.source == 0 ? c.rho0 : c.rho1) = std::move(m);
    }
    return c;
}

std::size_t count_orbits(const CechLie& c, const std::vector<Vec>& cocycles) {
    std::vector<Vec> reps;
    for (const auto& t : cocycles) {
        bool seen = false;
        for (const auto& r : reps)
            if (connect_cocycles(c, r, t)) {
                seen = true;
                break;
            }
        if (!seen) reps.push_back(t);
    }
    return reps.size();
}

}  // namespace dsi
