#include "dsi/thomwhitney.hpp"

#include <memory>
#include <mutex>

namespace dsi {

namespace {

std::string t_name(int i) { return "t" + std::to_string(i); }
std::string dt_name(int i) { return "dt" + std::to_string(i); }

mpz_class factorial(long n) {
    mpz_class f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

SimplexForms::SimplexForms(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative simplex dimension");
    std::vector<Variable> vars;
    std::vector<Generator> gens;
    for (int i = 1; i <= n; ++i) {
        vars.push_back({t_name(i), 1, false});
        gens.push_back({dt_name(i), 1, 1});
    }
    alg_ = Algebra::make(std::move(vars), std::move(gens));
    d_ = Derivation(alg_, 1);
    for (int i = 1; i <= n; ++i) {
        d_.set(t_name(i), Element::slot(alg_, dt_name(i)));
        d_.set(dt_name(i), Element(alg_));
    }
}

Element SimplexForms::one() const { return Element::constant(alg_, 1); }

Element SimplexForms::t(int i) const {
    if (i < 0 || i > n_) throw std::out_of_range("vertex index out of range");
    if (i > 0) return Element::slot(alg_, t_name(i));
    Element r = one();
    for (int j = 1; j <= n_; ++j) r -= Element::slot(alg_, t_name(j));
    return r;
}

Element SimplexForms::dt(int i) const {
    if (i < 0 || i > n_) throw std::out_of_range("vertex index out of range");
    if (i > 0) return Element::slot(alg_, dt_name(i));
    Element r(alg_);
    for (int j = 1; j <= n_; ++j) r -= Element::slot(alg_, dt_name(j));
    return r;
}

std::map<int, std::vector<Monomial>> SimplexForms::basis(int p_max) const {
    std::map<int, std::vector<Monomial>> out;
    for (int p = 0; p <= p_max; ++p)
        for (auto& [deg, ms] : slice_monomials(*alg_, p)) out[deg].insert(out[deg].end(), ms.begin(), ms.end());
    return out;
}

Element SimplexForms::whitney(const std::vector<int>& vertices) const {
    const int k = static_cast<int>(vertices.size()) - 1;
    if (k < 0) throw std::invalid_argument("Whitney form of no vertices");
    Element out(alg_);
    for (int j = 0; j <= k; ++j) {
        Element term = t(vertices[j]);
        for (int l = 0; l <= k; ++l)
            if (l != j) term = term * dt(vertices[l]);
        out += term.scaled(j % 2 ? -1 : 1);
    }
    return out.scaled(Rational(factorial(k)));
}

const SimplexForms& simplex_forms(int n) {
    static std::mutex mu;
    static std::vector<std::unique_ptr<SimplexForms>> cache;
    std::lock_guard lock(mu);
    if (n < 0) throw std::invalid_argument("negative simplex dimension");
    while (static_cast<int>(cache.size()) <= n) cache.push_back(std::make_unique<SimplexForms>(static_cast<int>(cache.size())));
    return *cache[n];
}

AlgebraMap face_map(const SimplexForms& from, const SimplexForms& to, int k) {
    const int n = from.n();
    if (to.n() != n - 1 || k < 0 || k > n) throw std::out_of_range("face index out of range");
    AlgebraMap f(from.algebra(), to.algebra());
    for (int j = 1; j <= n; ++j) {
        if (j == k) {
            f.set(t_name(j), Element(to.algebra()));
            f.set(dt_name(j), Element(to.algebra()));
        } else {
            const int i = j < k ? j : j - 1;
            f.set(t_name(j), to.t(i));
            f.set(dt_name(j), to.dt(i));
        }
    }
    return f;
}

AlgebraMap degeneracy_map(const SimplexForms& from, const SimplexForms& to, int k) {
    const int n = from.n();
    if (to.n() != n + 1 || k < 0 || k > n) throw std::out_of_range("degeneracy index out of range");
    AlgebraMap f(from.algebra(), to.algebra());
    for (int j = 1; j <= n; ++j) {
        if (j < k) {
            f.set(t_name(j), to.t(j));
            f.set(dt_name(j), to.dt(j));
        } else if (j == k) {
            f.set(t_name(j), to.t(j) + to.t(j + 1));
            f.set(dt_name(j), to.dt(j) + to.dt(j + 1));
        } else {
            f.set(t_name(j), to.t(j + 1));
            f.set(dt_name(j), to.dt(j + 1));
        }
    }
    return f;
}

Element simplex_face(const SimplexForms& s, const Element& form, int k) {
    if (s.n() == 0) throw std::out_of_range("the point has no faces");
    return face_map(s, simplex_forms(s.n() - 1), k).apply(form);
}

Rational integrate(const SimplexForms& s, const Element& top_form) {
    const int n = s.n();
    const std::size_t nv = s.algebra()->nvars();
    Rational total = 0;
    for (const auto& [m, c] : top_form.terms()) {
        long poly = 0;
        mpz_class num = 1;
        for (std::size_t i = 0; i < nv; ++i) {
            poly += m[i];
            num *= factorial(m[i]);
        }
        for (std::size_t i = nv; i < m.size(); ++i)
            if (m[i] != 1) throw std::invalid_argument("integrate: form degree differs from the simplex dimension");
        // Dirichlet: the integral of t^a over the simplex is prod a_i! / (|a| + n)!
        Rational v(num, factorial(poly + n));
        v.canonicalize();
        total += c * v;
    }
    total.canonicalize();
    return total;
}

}  // namespace dsi
