#pragma once

#include "dsi/liealgebroid.hpp"

#include <bit>
#include <random>

namespace dsi::detail {

inline int mask_weight(const KoszulData& k, unsigned mask) {
    int w = 0;
    for (std::size_t i = 0; i < k.rank(); ++i)
        if (mask & (1u << i)) w += k.algebra->generators()[i].weight;
    return w;
}

inline int popcount(unsigned mask) { return std::popcount(mask); }

// E^mask = e_{i1} ... e_{ip} in increasing order.
inline Element exterior_monomial(const KoszulData& k, unsigned mask) {
    Monomial m = k.algebra->unit();
    for (std::size_t i = 0; i < k.rank(); ++i)
        if (mask & (1u << i)) m[k.algebra->nvars() + i] = 1;
    return Element(k.algebra, m);
}

// Monomials of A of the given weight and degree; empty for negative weight.
inline std::vector<Monomial> algebra_slice(const AlgebraPtr& a, int weight, int degree) {
    if (weight < 0) return {};
    auto all = slice_monomials(*a, weight);
    auto it = all.find(degree);
    return it == all.end() ? std::vector<Monomial>{} : it->second;
}

inline std::vector<Monomial> algebra_slice(const AlgebraPtr& a, int weight) {
    std::vector<Monomial> out;
    if (weight < 0) return out;
    for (auto& [d, l] : slice_monomials(*a, weight)) out.insert(out.end(), l.begin(), l.end());
    return out;
}

// Rows indexed by (mask, monomial) pairs within one degree.
struct PairIndex {
    std::vector<std::pair<unsigned, Monomial>> items;
    std::map<std::pair<unsigned, Monomial>, std::size_t> index;

    void add(unsigned mask, const Monomial& m) {
        index.emplace(std::make_pair(mask, m), items.size());
        items.emplace_back(mask, m);
    }
    std::size_t size() const { return items.size(); }
    std::optional<std::size_t> find(unsigned mask, const Monomial& m) const {
        auto it = index.find({mask, m});
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

inline Rational random_coefficient(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 2);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline Element random_element(std::mt19937& rng, const AlgebraPtr& a, int weight, int degree) {
    Element e(a);
    for (const auto& m : algebra_slice(a, weight, degree))
        if (rng() % 2) e.add_term(m, random_coefficient(rng));
    return e;
}

}  // namespace dsi::detail
