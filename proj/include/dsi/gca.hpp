#pragma once

#include "dsi/exactlin.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dsi {

struct Variable {
    std::string name;
    int weight = 1;
    bool invertible = false;
};

struct Generator {
    std::string name;
    int degree = -1;
    int weight = 1;
    bool odd() const { return degree % 2 != 0; }
};

// Exponent vector: base variables first, then generators.
using Monomial = std::vector<int>;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Free graded-commutative algebra over a Laurent-polynomial ring with rational coefficients.
class Algebra {
public:
    Algebra(std::vector<Variable> vars, std::vector<Generator> gens);
    static AlgebraPtr make(std::vector<Variable> vars, std::vector<Generator> gens);

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t nvars() const { return vars_.size(); }
    std::size_t ngens() const { return gens_.size(); }
    std::size_t width() const { return vars_.size() + gens_.size(); }

    // Slot index of a named variable or generator in a Monomial.
    std::optional<std::size_t> slot(std::string_view name) const;
    bool is_generator_slot(std::size_t s) const { return s >= vars_.size(); }
    int slot_degree(std::size_t s) const;
    int slot_weight(std::size_t s) const;
    bool slot_odd(std::size_t s) const { return slot_degree(s) % 2 != 0; }
    const std::string& slot_name(std::size_t s) const;

    Monomial unit() const { return Monomial(width(), 0); }
    int degree(const Monomial& m) const;
    int weight(const Monomial& m) const;
    std::string format(const Monomial& m) const;

private:
    std::vector<Variable> vars_;
    std::vector<Generator> gens_;
};

struct MonomialOrder {
    const Algebra* alg = nullptr;
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sign of the product of two monomials in canonical order, 0 if an odd generator repeats.
int product_sign(const Algebra& alg, const Monomial& a, const Monomial& b);

class Element {
public:
    using Terms = std::map<Monomial, Rational, MonomialOrder>;

    Element() = default;
    explicit Element(AlgebraPtr alg);
    Element(AlgebraPtr alg, const Monomial& m, const Rational& c = Rational(1));

    static Element constant(AlgebraPtr alg, const Rational& c);
    static Element slot(AlgebraPtr alg, std::string_view name, int power = 1);

    const AlgebraPtr& algebra() const { return alg_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& c);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    Element scaled(const Rational& c) const;
    bool operator==(const Element& o) const;

    // Degree and weight when every term agrees, nothing otherwise (zero has none).
    std::optional<int> degree() const;
    std::optional<int> weight() const;

    // Keep terms satisfying a predicate on the monomial.
    template <class Pred>
    Element filtered(Pred keep) const {
        Element out(alg_);
        for (const auto& [m, c] : terms_)
            if (keep(m)) out.terms_.emplace(m, c);
        return out;
    }

    std::string str() const;

private:
    void check_same(const Element& o) const;

    AlgebraPtr alg_;
    Terms terms_{MonomialOrder{}};
};

Element pow(const Element& e, int n);

// Same element viewed in another algebra, matching slots by name. Odd generators must keep their
// relative order; slots missing from the target may only appear with exponent zero.
Element transfer(const Element& e, const AlgebraPtr& target);

struct MissingImage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Derivation of a fixed degree, given by images of generators and optionally of base variables.
// Base variables without an image are treated as constants (linear over the base ring).
class Derivation {
public:
    Derivation() = default;
    Derivation(AlgebraPtr alg, int degree);

    const AlgebraPtr& algebra() const { return alg_; }
    int degree() const { return degree_; }

    Derivation& set(std::string_view name, Element image);
    Derivation& set_slot(std::size_t slot, Element image);
    const std::optional<Element>& image(std::size_t slot) const { return images_[slot]; }
    bool has_base_action() const;

    Element apply(const Element& a) const;
    Element apply(const Monomial& m) const;

    Derivation operator+(const Derivation& o) const;
    Derivation scaled(const Rational& c) const;
    // Agreement on every slot where either side has an image.
    bool operator==(const Derivation& o) const;

private:
    AlgebraPtr alg_;
    int degree_ = 0;
    std::vector<std::optional<Element>> images_;
};

// Graded commutator D1 D2 - (-1)^{|D1||D2|} D2 D1, as a derivation.
Derivation commutator(const Derivation& a, const Derivation& b);

// Algebra morphism given by images of every slot; slots without images map to themselves
// (only allowed when source and target coincide).
class AlgebraMap {
public:
    AlgebraMap(AlgebraPtr source, AlgebraPtr target);

    AlgebraMap& set(std::string_view name, Element image);
    AlgebraMap& set_slot(std::size_t slot, Element image);

    Element apply(const Element& a) const;
    Element apply(const Monomial& m) const;

    const AlgebraPtr& source() const { return src_; }
    const AlgebraPtr& target() const { return dst_; }

private:
    Element slot_power(std::size_t s, int e) const;

    AlgebraPtr src_;
    AlgebraPtr dst_;
    std::vector<std::optional<Element>> images_;
};

// Finite weight slices.

struct SliceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SliceOptions {
    // Exponent windows for Laurent variables, keyed by name. Required for every Laurent variable.
    std::map<std::string, std::pair<int, int>> laurent_window;
};

// All monomials of the given weight, grouped by cohomological degree (ascending).
std::map<int, std::vector<Monomial>> slice_monomials(const Algebra& alg, int weight, const SliceOptions& opt = {});

// Index of basis monomials within a degree.
struct SliceBasis {
    int weight = 0;
    std::map<int, std::vector<Monomial>> by_degree;
    std::map<int, std::map<Monomial, std::size_t>> index;

    SliceBasis() = default;
    SliceBasis(int w, std::map<int, std::vector<Monomial>> monomials);
    std::size_t dim(int degree) const;
    std::optional<std::size_t> find(int degree, const Monomial& m) const;
    // Coordinates of a homogeneous element in the degree-n basis; throws on terms outside the slice.
    Vec coords(int degree, const Element& e) const;
    Element element(const AlgebraPtr& alg, int degree, std::span<const Rational> v) const;
};

// Matrix of a linear operator between two slice bases (source degree -> target degree).
template <class Op>
RatMatrix operator_matrix(const SliceBasis& src, int src_deg, const SliceBasis& dst, int dst_deg,
                          const AlgebraPtr& alg, Op&& op) {
    RatMatrix m(dst.dim(dst_deg), src.dim(src_deg));
    auto it = src.by_degree.find(src_deg);
    if (it == src.by_degree.end()) return m;
    for (std::size_t j = 0; j < it->second.size(); ++j) {
        Element img = op(Element(alg, it->second[j]));
        for (const auto& [mono, c] : img.terms()) {
            auto row = dst.find(dst_deg, mono);
            if (!row) throw SliceError("operator leaves the target slice: " + alg->format(mono));
            m.set(*row, j, c);
        }
    }
    return m;
}

// Complex of a degree +1, weight-preserving derivation on one weight slice.
SlicedComplex slice_complex(const AlgebraPtr& alg, const Derivation& d, const SliceBasis& basis);

// Parsing and printing of elements: `3/2 * x^2*e1*e2 - y*e1`.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t column);
    std::size_t column;
};

Element parse_element(const AlgebraPtr& alg, std::string_view text);
Rational parse_rational(std::string_view text);

}  // namespace dsi
