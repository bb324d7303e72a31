#include "dsi/gca.hpp"

#include <set>
#include <sstream>

namespace dsi {

Algebra::Algebra(std::vector<Variable> vars, std::vector<Generator> gens) : vars_(std::move(vars)), gens_(std::move(gens)) {
    std::set<std::string> seen;
    for (const auto& v : vars_)
        if (!seen.insert(v.name).second) throw std::invalid_argument("duplicate name " + v.name);
    for (const auto& g : gens_)
        if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate name " + g.name);
}

AlgebraPtr Algebra::make(std::vector<Variable> vars, std::vector<Generator> gens) {
    return std::make_shared<const Algebra>(std::move(vars), std::move(gens));
}

std::optional<std::size_t> Algebra::slot(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return vars_.size() + i;
    return std::nullopt;
}

int Algebra::slot_degree(std::size_t s) const { return s < vars_.size() ? 0 : gens_[s - vars_.size()].degree; }

int Algebra::slot_weight(std::size_t s) const {
    return s < vars_.size() ? vars_[s].weight : gens_[s - vars_.size()].weight;
}

const std::string& Algebra::slot_name(std::size_t s) const {
    return s < vars_.size() ? vars_[s].name : gens_[s - vars_.size()].name;
}

int Algebra::degree(const Monomial& m) const {
    int d = 0;
    for (std::size_t s = vars_.size(); s < m.size(); ++s) d += m[s] * slot_degree(s);
    return d;
}

int Algebra::weight(const Monomial& m) const {
    int w = 0;
    for (std::size_t s = 0; s < m.size(); ++s) w += m[s] * slot_weight(s);
    return w;
}

std::string Algebra::format(const Monomial& m) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (m[s] == 0) continue;
        if (!first) os << '*';
        first = false;
        os << slot_name(s);
        if (m[s] != 1) os << '^' << m[s];
    }
    if (first) os << '1';
    return os.str();
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    const std::size_t nv = alg ? alg->nvars() : 0;
    auto block = [&](std::size_t lo, std::size_t hi) -> int {
        long sa = 0, sb = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            sa += a[i];
            sb += b[i];
        }
        if (sa != sb) return sa < sb ? -1 : 1;
        for (std::size_t i = lo; i < hi; ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
        return 0;
    };
    if (int g = block(nv, a.size()); g != 0) return g < 0;
    return block(0, nv) < 0;
}

int product_sign(const Algebra& alg, const Monomial& a, const Monomial& b) {
    // Inversions between odd generators of a and strictly smaller odd generators of b.
    int sign = 1;
    int odd_in_b_below = 0;
    for (std::size_t s = alg.nvars(); s < a.size(); ++s) {
        if (!alg.slot_odd(s)) continue;
        if (a[s] && b[s]) return 0;
        if (a[s] && (odd_in_b_below % 2)) sign = -sign;
        if (b[s]) ++odd_in_b_below;
    }
    return sign;
}

}  // namespace dsi
