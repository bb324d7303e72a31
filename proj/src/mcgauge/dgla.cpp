#include "dsi/mcgauge.hpp"

#include <sstream>

namespace dsi {

namespace {

Vec axpy(Vec y, const Rational& a, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] += a * x[i];
    return y;
}

// Negate the odd-degree terms when p is odd: the sign (-1)^{p|x|} applied termwise.
Element parity_twist(const Element& x, int p) {
    if (p % 2 == 0 || x.is_zero()) return x;
    Element out(x.algebra());
    const auto& alg = *x.algebra();
    for (const auto& [m, c] : x.terms()) out.add_term(m, alg.degree(m) % 2 ? Rational(-c) : c);
    return out;
}

}  // namespace

NilpotentDgla::NilpotentDgla(std::vector<std::string> names, std::vector<int> degrees)
    : names_(std::move(names)), degrees_(std::move(degrees)) {
    if (names_.size() != degrees_.size()) throw std::invalid_argument("names and degrees differ in length");
    const std::size_t n = names_.size();
    brackets_.assign(n, std::vector<Vec>(n, zero_vec(n)));
    diff_.assign(n, zero_vec(n));
}

NilpotentDgla NilpotentDgla::upper_triangular(int n) {
    std::vector<std::string> names;
    std::map<std::pair<int, int>, std::size_t> at;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            at[{i, j}] = names.size();
            names.push_back("E" + std::to_string(i) + std::to_string(j));
        }
    NilpotentDgla g(names, std::vector<int>(names.size(), 0));
    // [E_ij, E_kl] = [j == k] E_il - [l == i] E_kj
    for (const auto& [ij, p] : at)
        for (const auto& [kl, q] : at) {
            if (q <= p) continue;
            Vec v = zero_vec(names.size());
            if (ij.second == kl.first) v[at.at({ij.first, kl.second})] += 1;
            if (kl.second == ij.first) v[at.at({kl.first, ij.second})] -= 1;
            g.set_bracket(p, q, v);
        }
    return g;
}

NilpotentDgla NilpotentDgla::abelian(std::vector<std::string> names) {
    const std::size_t n = names.size();
    return NilpotentDgla(std::move(names), std::vector<int>(n, 0));
}

std::optional<std::size_t> NilpotentDgla::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

Vec NilpotentDgla::basis_vector(std::size_t i) const {
    Vec v = zero_vec(dim());
    v.at(i) = 1;
    return v;
}

void NilpotentDgla::set_bracket(std::size_t i, std::size_t j, const Vec& value) {
    if (value.size() != dim()) throw std::invalid_argument("bracket value has the wrong length");
    brackets_.at(i).at(j) = value;
    const Rational s = (degrees_[i] * degrees_[j]) % 2 ? 1 : -1;
    Vec partner = zero_vec(dim());
    for (std::size_t k = 0; k < dim(); ++k) partner[k] = s * value[k];
    brackets_[j][i] = partner;
}

void NilpotentDgla::set_differential(std::size_t i, const Vec& value) {
    if (value.size() != dim()) throw std::invalid_argument("differential value has the wrong length");
    diff_.at(i) = value;
}

Vec NilpotentDgla::bracket(const Vec& a, const Vec& b) const {
    Vec out = zero_vec(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j)
            if (b[j] != 0) out = axpy(std::move(out), a[i] * b[j], brackets_[i][j]);
    }
    return out;
}

Vec NilpotentDgla::d(const Vec& a) const {
    Vec out = zero_vec(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        if (a[i] != 0) out = axpy(std::move(out), a[i], diff_[i]);
    return out;
}

std::vector<std::string> NilpotentDgla::verify() const {
    std::vector<std::string> bad;
    const std::size_t n = dim();
    auto e = [&](std::size_t i) { return basis_vector(i); };
    auto sign = [](int p) { return p % 2 ? Rational(-1) : Rational(1); };
    auto degree_ok = [&](const Vec& v, int deg) {
        for (std::size_t k = 0; k < n; ++k)
            if (v[k] != 0 && degrees_[k] != deg) return false;
        return true;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (!degree_ok(diff_[i], degrees_[i] + 1)) bad.push_back("d(" + names_[i] + ") has the wrong degree");
        if (!is_zero(d(diff_[i]))) bad.push_back("d^2(" + names_[i] + ") != 0");
        for (std::size_t j = 0; j < n; ++j) {
            const std::string ij = "[" + names_[i] + "," + names_[j] + "]";
            if (!degree_ok(brackets_[i][j], degrees_[i] + degrees_[j])) bad.push_back(ij + " has the wrong degree");
            if (axpy(brackets_[i][j], sign(degrees_[i] * degrees_[j]), brackets_[j][i]) != zero_vec(n))
                bad.push_back(ij + " is not graded antisymmetric");
            // d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]
            Vec rhs = axpy(bracket(diff_[i], e(j)), sign(degrees_[i]), bracket(e(i), diff_[j]));
            if (d(brackets_[i][j]) != rhs) bad.push_back("d is not a derivation on " + ij);
            for (std::size_t k = 0; k < n; ++k) {
                // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
                Vec lhs = bracket(e(i), brackets_[j][k]);
                Vec r = axpy(bracket(brackets_[i][j], e(k)), sign(degrees_[i] * degrees_[j]), bracket(e(j), brackets_[i][k]));
                if (lhs != r) bad.push_back("Jacobi fails on " + names_[i] + "," + names_[j] + "," + names_[k]);
            }
        }
    }
    return bad;
}

std::optional<int> NilpotentDgla::nilpotency_class() const {
    const std::size_t n = dim();
    std::vector<Vec> term;  // spanning set of the current term of the lower central series
    for (std::size_t i = 0; i < n; ++i) term.push_back(basis_vector(i));
    int c = 0;
    std::size_t prev_rank = n + 1;
    while (true) {
        Echelon span(n);
        for (const auto& v : term) span.insert(v);
        if (span.rank() == 0) return c;
        if (span.rank() == prev_rank) return std::nullopt;
        prev_rank = span.rank();
        std::vector<Vec> next;
        for (const auto& v : span.basis())
            for (std::size_t i = 0; i < n; ++i) next.push_back(bracket(basis_vector(i), v));
        term = std::move(next);
        ++c;
    }
}

std::string NilpotentDgla::format(const Vec& v) const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (v[i] == 0) continue;
        Rational c = v[i];
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        if (!first || c < 0) c = abs(c);
        if (c != 1) out << c.get_str() << "*";
        out << names_[i];
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

CoefficientAlgebra CoefficientAlgebra::rationals() {
    return CoefficientAlgebra{simplex_forms(0).algebra(), std::nullopt, -1};
}

CoefficientAlgebra CoefficientAlgebra::forms(int n, int cap) {
    const auto& s = simplex_forms(n);
    return CoefficientAlgebra{s.algebra(), s.d(), cap};
}

Element CoefficientAlgebra::truncate(const Element& x) const {
    if (weight_cap < 0) return x;
    const auto& alg = *algebra;
    return x.filtered([&](const Monomial& m) { return alg.weight(m) <= weight_cap; });
}

TensorDgla::TensorDgla(NilpotentDgla g, CoefficientAlgebra b) : g_(std::move(g)), b_(std::move(b)) {
    auto c = g_.nilpotency_class();
    if (!c) throw std::invalid_argument("Lie algebra is not nilpotent");
    class_ = *c;
}

TensorDgla::Elem TensorDgla::zero() const { return Elem(g_.dim(), Element(b_.algebra)); }

TensorDgla::Elem TensorDgla::constant(const Vec& v) const {
    Elem out = zero();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out[i] = Element::constant(b_.algebra, v[i]);
    return out;
}

TensorDgla::Elem TensorDgla::pure(std::size_t i, const Element& coefficient) const {
    Elem out = zero();
    out.at(i) = b_.truncate(coefficient);
    return out;
}

TensorDgla::Elem TensorDgla::add(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

TensorDgla::Elem TensorDgla::scaled(const Elem& a, const Rational& c) const {
    Elem out = zero();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i].scaled(c);
    return out;
}

TensorDgla::Elem TensorDgla::bracket(const Elem& a, const Elem& b) const {
    Elem out = zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            const Vec& br = g_.bracket_of(i, j);
            if (dsi::is_zero(br)) continue;
            const Element prod = b_.truncate(a[i] * parity_twist(b[j], g_.degree(i)));
            if (prod.is_zero()) continue;
            for (std::size_t k = 0; k < br.size(); ++k)
                if (br[k] != 0) out[k] += prod.scaled(br[k]);
        }
    }
    return out;
}

TensorDgla::Elem TensorDgla::d(const Elem& a) const {
    Elem out = zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        if (b_.d) out[i] += b_.truncate(b_.d->apply(a[i]));
        const Vec& de = g_.differential_of(i);
        if (dsi::is_zero(de)) continue;
        const Element tw = parity_twist(a[i], 1);
        for (std::size_t k = 0; k < de.size(); ++k)
            if (de[k] != 0) out[k] += tw.scaled(de[k]);
    }
    return out;
}

bool TensorDgla::is_zero(const Elem& a) const {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

std::optional<int> TensorDgla::degree(const Elem& a) const {
    std::optional<int> deg;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& [m, c] : a[i].terms()) {
            const int d = b_.algebra->degree(m) + g_.degree(i);
            if (deg && *deg != d) return std::nullopt;
            deg = d;
        }
    return deg;
}

std::optional<Vec> TensorDgla::scalars(const Elem& a) const {
    Vec v = zero_vec(a.size());
    const Monomial one = b_.algebra->unit();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& [m, c] : a[i].terms()) {
            if (m != one) return std::nullopt;
            v[i] = c;
        }
    return v;
}

Vec TensorDgla::at_vertex(const Elem& a, int vertex) const {
    const auto& alg = *b_.algebra;
    const int n = static_cast<int>(alg.nvars());
    if (vertex < 0 || vertex > n) throw std::out_of_range("vertex out of range");
    Vec v = zero_vec(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& [m, c] : a[i].terms()) {
            bool hit = true;
            for (int s = 0; s < static_cast<int>(m.size()) && hit; ++s) {
                if (alg.is_generator_slot(s)) hit = m[s] == 0;
                else if (m[s] != 0) hit = s + 1 == vertex;
            }
            if (hit) v[i] += c;
        }
    return v;
}

std::string TensorDgla::str(const Elem& a) const {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + a[i].str() + ")*" + g_.name(i);
    }
    return out.empty() ? "0" : out;
}

TensorDgla::Elem bch(const TensorDgla& l, const TensorDgla::Elem& a, const TensorDgla::Elem& b) {
    if (l.nilpotency_class() > 4) throw std::invalid_argument("bch is implemented through nilpotency class 4");
    const auto ab = l.bracket(a, b);
    auto z = l.add(l.add(a, b), l.scaled(ab, Rational(1, 2)));
    if (l.nilpotency_class() <= 2) return z;
    const auto a_ab = l.bracket(a, ab);
    const auto b_ab = l.bracket(b, ab);
    z = l.add(z, l.scaled(l.add(a_ab, l.scaled(b_ab, -1)), Rational(1, 12)));
    if (l.nilpotency_class() <= 3) return z;
    return l.add(z, l.scaled(l.bracket(b, a_ab), Rational(-1, 24)));
}

Vec bch(const NilpotentDgla& g, const Vec& a, const Vec& b) {
    TensorDgla l(g, CoefficientAlgebra::rationals());
    return *l.scalars(bch(l, l.constant(a), l.constant(b)));
}

TensorDgla::Elem gauge(const TensorDgla& l, const TensorDgla::Elem& a, const TensorDgla::Elem& theta) {
    // sum_k ad_a^k(theta) / k!  -  sum_k ad_a^k(da) / (k+1)!
    auto out = l.zero();
    auto x = theta;
    auto y = l.scaled(l.d(a), -1);
    Rational fx = 1, fy = 1;
    for (int k = 0; !(l.is_zero(x) && l.is_zero(y)); ++k) {
        fy /= k + 1;
        out = l.add(out, l.add(l.scaled(x, fx), l.scaled(y, fy)));
        fx /= k + 1;
        x = l.bracket(a, x);
        y = l.bracket(a, y);
    }
    return out;
}

TensorDgla::Elem mc_defect(const TensorDgla& l, const TensorDgla::Elem& theta) {
    return l.add(l.d(theta), l.scaled(l.bracket(theta, theta), Rational(1, 2)));
}

bool is_mc(const TensorDgla& l, const TensorDgla::Elem& theta) {
    auto deg = l.degree(theta);
    if (deg && *deg != 1) return false;
    return l.is_zero(mc_defect(l, theta));
}

}  // namespace dsi
