#include "dsi/gca.hpp"

namespace dsi {

Derivation::Derivation(AlgebraPtr alg, int degree) : alg_(std::move(alg)), degree_(degree), images_(alg_->width()) {}

Derivation& Derivation::set(std::string_view name, Element image) {
    auto s = alg_->slot(name);
    if (!s) throw std::invalid_argument("unknown name " + std::string(name));
    return set_slot(*s, std::move(image));
}

Derivation& Derivation::set_slot(std::size_t slot, Element image) {
    if (image.is_zero()) image = Element(alg_);
    images_.at(slot) = std::move(image);
    return *this;
}

bool Derivation::has_base_action() const {
    for (std::size_t s = 0; s < alg_->nvars(); ++s)
        if (images_[s] && !images_[s]->is_zero()) return true;
    return false;
}

Element Derivation::apply(const Monomial& m) const {
    Element out(alg_);
    Monomial prefix = alg_->unit();
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (m[s] == 0) continue;
        const auto& img = images_[s];
        if (!img) {
            if (alg_->is_generator_slot(s)) throw MissingImage("no image for generator " + alg_->slot_name(s));
        } else if (!img->is_zero()) {
            Monomial left = prefix;
            left[s] = m[s] - 1;
            Monomial right = alg_->unit();
            for (std::size_t t = s + 1; t < m.size(); ++t) right[t] = m[t];
            const bool flip = (degree_ % 2 != 0) && (alg_->degree(prefix) % 2 != 0);
            Rational c(m[s]);
            if (flip) c = -c;
            out += (Element(alg_, left, c) * *img) * Element(alg_, right);
        }
        prefix[s] = m[s];
    }
    return out;
}

Element Derivation::apply(const Element& a) const {
    Element out(alg_);
    for (const auto& [m, c] : a.terms()) out += apply(m).scaled(c);
    return out;
}

Derivation Derivation::operator+(const Derivation& o) const {
    if (degree_ != o.degree_ || alg_ != o.alg_) throw std::invalid_argument("derivation sum mismatch");
    Derivation r(alg_, degree_);
    for (std::size_t s = 0; s < images_.size(); ++s) {
        if (!images_[s] && !o.images_[s]) continue;
        Element e(alg_);
        if (images_[s]) e += *images_[s];
        if (o.images_[s]) e += *o.images_[s];
        r.images_[s] = std::move(e);
    }
    return r;
}

Derivation Derivation::scaled(const Rational& c) const {
    Derivation r(alg_, degree_);
    for (std::size_t s = 0; s < images_.size(); ++s)
        if (images_[s]) r.images_[s] = images_[s]->scaled(c);
    return r;
}

bool Derivation::operator==(const Derivation& o) const {
    if (alg_ != o.alg_) return false;
    for (std::size_t s = 0; s < images_.size(); ++s) {
        const Element a = images_[s] ? *images_[s] : Element(alg_);
        const Element b = o.images_[s] ? *o.images_[s] : Element(alg_);
        if (!(a == b)) return false;
        if (alg_->is_generator_slot(s) && (!images_[s]) != (!o.images_[s])) return false;
    }
    return true;
}

Derivation commutator(const Derivation& a, const Derivation& b) {
    if (a.algebra() != b.algebra()) throw std::invalid_argument("commutator of derivations on different algebras");
    const auto& alg = a.algebra();
    Derivation r(alg, a.degree() + b.degree());
    const bool minus = (a.degree() % 2 == 0) || (b.degree() % 2 == 0);
    const bool base = a.has_base_action() || b.has_base_action();
    for (std::size_t s = 0; s < alg->width(); ++s) {
        if (!alg->is_generator_slot(s) && !base) continue;
        Monomial m = alg->unit();
        m[s] = 1;
        const Element g(alg, m);
        Element ab = a.apply(b.apply(g));
        Element ba = b.apply(a.apply(g));
        r.set_slot(s, minus ? ab - ba : ab + ba);
    }
    return r;
}

AlgebraMap::AlgebraMap(AlgebraPtr source, AlgebraPtr target)
    : src_(std::move(source)), dst_(std::move(target)), images_(src_->width()) {}

AlgebraMap& AlgebraMap::set(std::string_view name, Element image) {
    auto s = src_->slot(name);
    if (!s) throw std::invalid_argument("unknown name " + std::string(name));
    return set_slot(*s, std::move(image));
}

AlgebraMap& AlgebraMap::set_slot(std::size_t slot, Element image) {
    if (image.is_zero()) image = Element(dst_);
    images_.at(slot) = std::move(image);
    return *this;
}

Element AlgebraMap::slot_power(std::size_t s, int e) const {
    Element base(dst_);
    if (images_[s]) {
        base = *images_[s];
    } else {
        if (src_ != dst_) throw MissingImage("no image for " + src_->slot_name(s));
        Monomial m = dst_->unit();
        m[s] = 1;
        base = Element(dst_, m);
    }
    if (e >= 0) return pow(base, e);
    // Negative powers only for images that are a single invertible monomial.
    if (base.terms().size() != 1) throw std::invalid_argument("cannot invert image of " + src_->slot_name(s));
    const auto& [m, c] = *base.terms().begin();
    Monomial inv = m;
    for (std::size_t t = 0; t < inv.size(); ++t) {
        if (m[t] != 0 && !(t < dst_->nvars() && dst_->variables()[t].invertible))
            throw std::invalid_argument("cannot invert image of " + src_->slot_name(s));
        inv[t] = -m[t];
    }
    return pow(Element(dst_, inv, 1 / c), -e);
}

Element AlgebraMap::apply(const Monomial& m) const {
    Element out = Element::constant(dst_, Rational(1));
    for (std::size_t s = 0; s < m.size(); ++s)
        if (m[s] != 0) out = out * slot_power(s, m[s]);
    return out;
}

Element AlgebraMap::apply(const Element& a) const {
    Element out(dst_);
    for (const auto& [m, c] : a.terms()) out += apply(m).scaled(c);
    return out;
}

}  // namespace dsi
