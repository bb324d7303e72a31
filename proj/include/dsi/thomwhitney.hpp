#pragma once

#include "dsi/gca.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dsi {

// Polynomial forms on the standard n-simplex with t0 and dt0 eliminated.
// Slots are t1..tn (weight 1) and dt1..dtn (degree 1, weight 1); weight is polynomial degree.
class SimplexForms {
public:
    explicit SimplexForms(int n);

    int n() const { return n_; }
    const AlgebraPtr& algebra() const { return alg_; }
    const Derivation& d() const { return d_; }

    Element one() const;
    Element t(int i) const;   // 0 <= i <= n
    Element dt(int i) const;

    // Monomials of polynomial degree <= p_max, grouped by form degree.
    std::map<int, std::vector<Monomial>> basis(int p_max) const;

    // Whitney form k! sum_j (-1)^j t_{i_j} dt_{i_0}..^..dt_{i_k} for increasing vertices i_0 < .. < i_k.
    Element whitney(const std::vector<int>& vertices) const;

private:
    int n_;
    AlgebraPtr alg_;
    Derivation d_;
};

// Shared instance per dimension, so forms from different callers live in one algebra.
const SimplexForms& simplex_forms(int n);

// Pullback along the k-th face inclusion Delta^{n-1} -> Delta^n.
AlgebraMap face_map(const SimplexForms& from, const SimplexForms& to, int k);
// Pullback along the k-th degeneracy Delta^{n+1} -> Delta^n.
AlgebraMap degeneracy_map(const SimplexForms& from, const SimplexForms& to, int k);

Element simplex_face(const SimplexForms& s, const Element& form, int k);
// Exact integral of a top form over Delta^n with the orientation dt1..dtn.
Rational integrate(const SimplexForms& s, const Element& top_form);

// A level of a diagram is a direct sum of components, each a weight-sliced algebra with an
// optional differential. Weight of a component monomial is its algebra weight plus the offset.
struct DiagramComponent {
    std::string name;
    AlgebraPtr algebra;
    std::optional<Derivation> differential;
    SliceOptions slice;
    int weight_offset = 0;
};

// x -> factor * map(x), from component `source` of the neighboring level.
struct ComponentMap {
    std::size_t source = 0;
    AlgebraMap map;
    Element factor;
};

struct CosimplicialDiagram {
    std::vector<std::vector<DiagramComponent>> levels;
    // cofaces[n][k][c] feeds component c of level n from level n-1 (n >= 1, 0 <= k <= n).
    std::vector<std::vector<std::vector<ComponentMap>>> cofaces;
    // codegeneracies[n][k][c] feeds component c of level n from level n+1 (0 <= k <= n); may be empty.
    std::vector<std::vector<std::vector<ComponentMap>>> codegeneracies;

    int depth() const { return static_cast<int>(levels.size()) - 1; }
    bool has_codegeneracies() const { return !codegeneracies.empty(); }
};

// Elements of a level: one algebra element per component.
using LevelElement = std::vector<Element>;

Element apply_component_map(const ComponentMap& cm, const Element& x);
LevelElement apply_coface(const CosimplicialDiagram& v, int n, int k, const LevelElement& x);
LevelElement apply_codegeneracy(const CosimplicialDiagram& v, int n, int k, const LevelElement& x);
LevelElement level_differential(const CosimplicialDiagram& v, int n, const LevelElement& x);

// Cosimplicial identities on cofaces, and coface/differential compatibility, on weight slices.
std::vector<std::string> check_cosimplicial(const CosimplicialDiagram& v, const std::vector<int>& weights);

// Constant diagram on a dg algebra: every level is A, every coface and codegeneracy the identity.
CosimplicialDiagram constant_diagram(const AlgebraPtr& a, const std::optional<Derivation>& q, int depth,
                                     const SliceOptions& slice = {});

// Ordered Cech diagram of O(d) for the cover of P^1 by {x0 != 0} and {x1 != 0}, in the frames
// x0^d and x1^d with z = x1/x0 and w = 1/z. Torus weight of z^a x0^d is a.
// Laurent windows keep weights in [-window, window].
CosimplicialDiagram cech_line_bundle(int d, int window);

// Elements of V^n (x) Omega_n live in the tensor algebra of the component with the simplex forms.
struct TwElement {
    std::vector<std::vector<Element>> levels;  // [n][component]
};

class TwModel {
public:
    explicit TwModel(CosimplicialDiagram v);

    const CosimplicialDiagram& diagram() const { return v_; }
    int depth() const { return v_.depth(); }
    // Algebra of V^level component c tensored with forms on Delta^m.
    const AlgebraPtr& tensor(int level, std::size_t c, int m) const { return tensor_[level][c][m]; }

    TwElement zero() const;
    TwElement unit() const;
    TwElement add(const TwElement& a, const TwElement& b) const;
    TwElement scaled(const TwElement& a, const Rational& c) const;
    TwElement product(const TwElement& a, const TwElement& b) const;
    TwElement differential(const TwElement& a) const;
    bool equal(const TwElement& a, const TwElement& b) const;

    // Differences of the two sides of every equalizer equation, keyed by a readable label.
    std::vector<std::pair<std::string, Element>> equalizer_residuals(const TwElement& a) const;
    // Labels of the violated equations; empty means membership.
    std::vector<std::string> equalizer_defects(const TwElement& a) const;

    // v (x) omega inside tensor(level, c, m).
    Element join(int level, std::size_t c, int m, const Element& v, const Element& omega) const;
    // Split a tensor element as sum v (x) omega with omega a monomial of Omega_m.
    std::map<Monomial, Element> split(int level, std::size_t c, int m, const Element& x) const;

    // Whitney map of a Tot element living at level k.
    TwElement whitney(int k, const LevelElement& x) const;
    // Integration of the top-form part at each level.
    std::vector<LevelElement> integrate(const TwElement& a) const;

private:
    // Structure maps of V applied to the V factor, and pullbacks applied to the form factor.
    std::vector<Element> coface_tensor(int level, int k, int m, const std::vector<Element>& x) const;
    std::vector<Element> codegeneracy_tensor(int level, int k, int m, const std::vector<Element>& x) const;
    std::vector<Element> pull_forms(int level, int m_from, int m_to, const AlgebraMap& f,
                                    const std::vector<Element>& x) const;

    CosimplicialDiagram v_;
    std::vector<std::vector<std::vector<AlgebraPtr>>> tensor_;
    std::vector<std::vector<Derivation>> tensor_d_;  // on tensor(n, c, n)
};

// Basis item of an ambient space: (level, component, monomial).
struct LevelMonomial {
    int level = 0;
    std::size_t component = 0;
    Monomial monomial;
    bool operator<(const LevelMonomial& o) const;
};

// Subspace of a monomial space cut out by linear equations. Basis vectors come from a reduced
// kernel, so the coordinates of a member are its entries at the free columns.
struct AmbientSubspace {
    std::vector<LevelMonomial> ambient;
    std::map<LevelMonomial, std::size_t> index;
    std::vector<Vec> basis;
    std::vector<std::size_t> free;

    std::optional<Vec> coords(std::span<const Rational> v) const;
};

struct TwSlice {
    int weight = 0;
    int p_max = 0;
    std::map<int, AmbientSubspace> spaces;  // total degree -> equalizer inside prod_n V^n (x) Omega_n
    SlicedComplex complex;

    TwElement element(const TwModel& m, int degree, std::span<const Rational> coords) const;
    std::optional<Vec> coords(const TwModel& m, int degree, const TwElement& x) const;
};

TwSlice tw(const TwModel& m, int weight, int p_max);

struct TotSlice {
    int weight = 0;
    std::map<int, AmbientSubspace> spaces;  // normalized part of sum_n V^n[-n] (everything without codegeneracies)
    SlicedComplex complex;

    std::vector<LevelElement> element(const TwModel& m, int degree, std::span<const Rational> coords) const;
    std::optional<Vec> coords(const TwModel& m, int degree, const std::vector<LevelElement>& x) const;
};

TotSlice tot(const TwModel& m, int weight);

struct RetractionReport {
    int weight = 0;
    int p_max = 0;
    std::map<int, std::size_t> h_tw;
    std::map<int, std::size_t> h_tot;
    bool square_zero = true;
    bool i_chain_map = true;
    bool p_chain_map = true;
    bool pi_identity = true;
    bool homotopy = true;  // I P - id = dH + Hd for some H on the slice
    std::vector<std::string> failures;

    bool dims_agree() const { return h_tw == h_tot; }
    bool ok() const { return square_zero && i_chain_map && p_chain_map && pi_identity && homotopy && dims_agree(); }
};

RetractionReport check_retraction(const TwModel& m, int weight, int p_max);

// Whether H(TW) on a slice is unchanged from p_max to p_max + 1.
bool tw_stable(const TwModel& m, int weight, int p_max);

}  // namespace dsi
