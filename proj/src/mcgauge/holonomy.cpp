#include "dsi/mcgauge.hpp"

namespace dsi {

TensorDgla::Elem restrict_to_edge(const TensorDgla& forms_g, const TensorDgla::Elem& x, int i, int j) {
    const auto& src = forms_g.coefficients().algebra;
    const int n = static_cast<int>(src->nvars());
    if (i < 0 || j < 0 || i > n || j > n || i == j) throw std::out_of_range("edge vertices out of range");
    const auto& edge = simplex_forms(1);
    // t_k -> [k == i](1 - s) + [k == j] s along the path s -> (1 - s) v_i + s v_j
    AlgebraMap f(src, edge.algebra());
    for (int k = 1; k <= n; ++k) {
        Element tk(edge.algebra());
        if (k == i) tk += edge.t(0);
        if (k == j) tk += edge.t(1);
        f.set("t" + std::to_string(k), tk);
        f.set("dt" + std::to_string(k), edge.d().apply(tk));
    }
    TensorDgla::Elem out;
    for (const auto& c : x) out.push_back(f.apply(c));
    return out;
}

TensorDgla::Elem transport_log(const TensorDgla& edge_g, const TensorDgla::Elem& theta) {
    const auto& g = edge_g.lie();
    const auto& s = simplex_forms(1);
    if (edge_g.coefficients().algebra != s.algebra()) throw std::invalid_argument("transport needs forms on an edge");
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (g.degree(i) != 0) throw std::invalid_argument("transport needs a Lie algebra in degree 0");
    if (edge_g.nilpotency_class() > 3) throw std::invalid_argument("transport is implemented through nilpotency class 3");

    // A(s) = sum_p a_p s^p from theta = A(s) ds
    std::vector<Vec> a;
    for (std::size_t i = 0; i < theta.size(); ++i)
        for (const auto& [m, c] : theta[i].terms()) {
            if (m[1] != 1) throw std::invalid_argument("transport needs a one-form");
            const auto p = static_cast<std::size_t>(m[0]);
            if (a.size() <= p) a.resize(p + 1, zero_vec(g.dim()));
            a[p][i] += c;
        }

    // log Y(s) = Omega1(s) - Omega2(s) + Omega3(s), the Magnus terms of A for Y' = A Y
    std::map<int, Vec> log_y;
    auto put = [&](int power, const Rational& coef, const Vec& v) {
        auto [it, fresh] = log_y.try_emplace(power, zero_vec(g.dim()));
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] != 0) it->second[k] += coef * v[k];
    };
    const int top = static_cast<int>(a.size());
    for (int p = 0; p < top; ++p) put(p + 1, Rational(1, p + 1), a[p]);
    for (int p = 0; p < top; ++p)
        for (int q = 0; q < top; ++q)
            put(p + q + 2, Rational(-1, 2 * (q + 1) * (p + q + 2)), g.bracket(a[p], a[q]));
    if (edge_g.nilpotency_class() == 3)
        for (int p = 0; p < top; ++p)
            for (int q = 0; q < top; ++q)
                for (int r = 0; r < top; ++r) {
                    Vec v = g.bracket(a[p], g.bracket(a[q], a[r]));
                    const Vec w = g.bracket(a[r], g.bracket(a[q], a[p]));
                    for (std::size_t k = 0; k < v.size(); ++k) v[k] += w[k];
                    put(p + q + r + 3, Rational(1, 6 * (r + 1) * (q + r + 2) * (p + q + r + 3)), v);
                }

    auto out = edge_g.zero();
    for (const auto& [power, v] : log_y)
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] != 0) out[k] += Element::slot(s.algebra(), "t1", power).scaled(v[k]);
    return out;
}

Vec holonomy(const TensorDgla& forms_g, const TensorDgla::Elem& theta, int i, int j) {
    if (forms_g.coefficients().weight_cap >= 0)
        throw std::invalid_argument("holonomy needs untruncated forms");
    if (!is_mc(forms_g, theta)) throw NotMaurerCartan("holonomy of a connection that is not flat");
    TensorDgla edge(forms_g.lie(), CoefficientAlgebra::forms(1));
    return edge.at_vertex(transport_log(edge, restrict_to_edge(forms_g, theta, i, j)), 1);
}

}  // namespace dsi
