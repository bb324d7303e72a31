#include "dsi/gca.hpp"

#include <algorithm>
#include <sstream>

namespace dsi {

Element::Element(AlgebraPtr alg) : alg_(std::move(alg)), terms_(MonomialOrder{alg_.get()}) {}

Element::Element(AlgebraPtr alg, const Monomial& m, const Rational& c) : Element(std::move(alg)) {
    if (m.size() != alg_->width()) throw std::invalid_argument("monomial width mismatch");
    add_term(m, c);
}

Element Element::constant(AlgebraPtr alg, const Rational& c) {
    Monomial u = alg->unit();
    return Element(std::move(alg), u, c);
}

Element Element::slot(AlgebraPtr alg, std::string_view name, int power) {
    auto s = alg->slot(name);
    if (!s) throw std::invalid_argument("unknown name " + std::string(name));
    if (power < 0 && !(*s < alg->nvars() && alg->variables()[*s].invertible))
        throw std::invalid_argument("negative power of non-invertible " + std::string(name));
    Monomial m = alg->unit();
    m[*s] = power;
    if (alg->slot_odd(*s) && power > 1) return Element(alg);
    return Element(alg, m);
}

Rational Element::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

void Element::check_same(const Element& o) const {
    if (alg_ && o.alg_ && alg_ != o.alg_) throw std::invalid_argument("elements of different algebras");
}

Element& Element::operator+=(const Element& o) {
    check_same(o);
    if (!alg_) *this = Element(o.alg_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    check_same(o);
    if (!alg_) *this = Element(o.alg_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Element Element::operator+(const Element& o) const {
    Element r = *this;
    r += o;
    return r;
}

Element Element::operator-(const Element& o) const {
    Element r = *this;
    r -= o;
    return r;
}

Element Element::operator-() const { return scaled(Rational(-1)); }

Element Element::scaled(const Rational& c) const {
    Element r(alg_);
    if (sgn(c) == 0) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
    return r;
}

Element Element::operator*(const Element& o) const {
    check_same(o);
    const AlgebraPtr& alg = alg_ ? alg_ : o.alg_;
    Element r(alg);
    if (!alg) return r;
    Monomial prod(alg->width());
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            const int s = product_sign(*alg, a, b);
            if (s == 0) continue;
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a[i] + b[i];
            r.add_term(prod, s > 0 ? Rational(ca * cb) : Rational(-ca * cb));
        }
    return r;
}

bool Element::operator==(const Element& o) const {
    if (terms_.empty() && o.terms_.empty()) return true;
    return alg_ == o.alg_ && terms_ == o.terms_;
}

std::optional<int> Element::degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        const int k = alg_->degree(m);
        if (d && *d != k) return std::nullopt;
        d = k;
    }
    return d;
}

std::optional<int> Element::weight() const {
    std::optional<int> w;
    for (const auto& [m, c] : terms_) {
        const int k = alg_->weight(m);
        if (w && *w != k) return std::nullopt;
        w = k;
    }
    return w;
}

std::string Element::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "- ";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
        if (unit) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << " * ";
            os << alg_->format(m);
        }
    }
    return os.str();
}

Element pow(const Element& e, int n) {
    if (n < 0) throw std::invalid_argument("negative power of an element");
    Element r = Element::constant(e.algebra(), Rational(1));
    for (int i = 0; i < n; ++i) r = r * e;
    return r;
}

Element transfer(const Element& e, const AlgebraPtr& target) {
    Element out(target);
    if (!e.algebra()) return out;
    const Algebra& src = *e.algebra();
    std::vector<std::optional<std::size_t>> map(src.width());
    for (std::size_t s = 0; s < src.width(); ++s) map[s] = target->slot(src.slot_name(s));
    for (const auto& [m, c] : e.terms()) {
        Monomial n = target->unit();
        for (std::size_t s = 0; s < m.size(); ++s) {
            if (m[s] == 0) continue;
            if (!map[s]) throw std::invalid_argument("transfer: no slot named " + src.slot_name(s));
            n[*map[s]] = m[s];
        }
        out.add_term(n, c);
    }
    return out;
}

}  // namespace dsi
