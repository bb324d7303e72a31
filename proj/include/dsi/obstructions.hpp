#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsi/mcgauge.hpp"

namespace dsi {

// Laurent polynomial in one variable, exponent -> coefficient.
using Laurent = std::map<int, Rational>;

// Line bundle on the two-chart cover of P^1. Its U1 frame is c z^e times the U0 frame, and the
// U0 frame has torus weight mu, so O(d) is {c = 1, e = d} and T_X is {c = -1, e = 2, mu = -1}.
struct LineBundle {
    std::string name;
    Rational c = 1;
    int e = 0;
    int mu = 0;

    int degree() const { return e; }
    LineBundle dual() const;
    LineBundle tensor(const LineBundle& o) const;
    LineBundle power(int k) const;
};

// Two-chart cover of P^1 with the truncated Ŝ(N^vee) on each chart and the weight-zero unipotent
// derivations of every chart algebra as a nilpotent Lie algebra.
struct ChartCover {
    TruncatedNormalSheaf sheaf;
    // Basis derivations of U0, U1 and U01, in the order of the Lie algebras in `lie`.
    std::vector<Derivation> der0, der1, der01;
    DerivationAction action;  // lie = {g0, g1, g01, rho0, rho1}, alpha = der01

    int order() const { return sheaf.order; }
    LineBundle conormal() const;
    LineBundle normal() const { return conormal().dual(); }
    LineBundle tangent() const;

    // A derivation of U1 moved to the overlap along w -> 1/z, n1 -> c z^{-m} n0.
    Derivation from_u1(const Derivation& d) const;
};

// Coordinates of a derivation in a basis of monomial derivations, nothing when outside the span.
std::optional<Vec> derivation_coords(const std::vector<Derivation>& basis, const Derivation& d);

ChartCover p1_cover(int m, int order, int window, int mu = 0, const Rational& c = 1);

struct NotUnipotent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Automorphism of A(U01) = Q[z, 1/z][n0]/(n0^{order+1}) fixed by the images of z and n0.
class FilteredAutomorphism {
public:
    FilteredAutomorphism(const TruncatedNormalSheaf& s, Element z_image, Element n_image);
    static FilteredAutomorphism identity(const TruncatedNormalSheaf& s);
    // exp(D) for a derivation raising the conormal degree.
    static FilteredAutomorphism exp(const TruncatedNormalSheaf& s, const Derivation& d);

    const Element& z_image() const { return z_; }
    const Element& n_image() const { return n_; }
    const AlgebraPtr& algebra() const { return z_.algebra(); }
    int order() const { return order_; }

    Element apply(const Element& x) const;
    // this after inner
    FilteredAutomorphism after(const FilteredAutomorphism& inner) const;
    bool operator==(const FilteredAutomorphism& o) const { return z_ == o.z_ && n_ == o.n_; }

    // Generators on which gr^{<=1} is not the identity or the torus weight moves.
    std::vector<std::string> unipotence_defects() const;
    // Multiplicativity on products of sample monomials.
    std::vector<std::string> multiplicativity_defects() const;

private:
    FilteredAutomorphism(int order, Element z_image, Element n_image);
    static FilteredAutomorphism exp(int order, const Derivation& d);
    friend FilteredAutomorphism inverse(const FilteredAutomorphism& phi);
    Element truncate(const Element& x) const;

    int order_ = 0;
    Element z_, n_, z_inv_;
};

// T with exp(T) = phi, verified on both generators.
Derivation log_cocycle(const FilteredAutomorphism& phi);

struct CocycleReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Unipotence of both transitions and phi10 = phi01^{-1} at the truncation order.
CocycleReport verify_cocycle(const ChartCover& cover, const FilteredAutomorphism& phi01, const FilteredAutomorphism& phi10);
FilteredAutomorphism inverse(const FilteredAutomorphism& phi);

// Q = dt1 * T on the overlap of TW(A), split by how far it raises the conormal degree.
struct LinftyStructure {
    int order = 0;
    Derivation t;                 // log of the transition
    Vec theta;                    // T in the basis of g01; theta = T dt1 is the MC element
    std::vector<Derivation> parts;  // parts[r] raises the conormal degree by exactly r

    // Q_r, a_k = Q_k on conormal degree 0 and l_k = Q_{k-1} on conormal degree 1.
    TwElement q(const TwModel& model, const TruncatedNormalSheaf& s, int r, const TwElement& x) const;
    // a_k(z) / n0^k and l_k(n0) / n0^k as Laurent coefficients of the frame.
    Laurent anchor_cochain(int k) const;
    Laurent bracket_cochain(int k) const;
    bool anchor_zero(int k) const { return anchor_cochain(k).empty(); }
    bool bracket_zero(int k) const { return bracket_cochain(k).empty(); }
};

LinftyStructure linfty_from_cocycle(const ChartCover& cover, const FilteredAutomorphism& phi);

struct RelationReport {
    bool minimal = true;
    bool square_zero = true;  // (d + Q)^2 = 0 componentwise
    bool module = true;       // [l_k, e(f)] = e(a_{k-1}(f))
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return minimal && square_zero && module; }
};

RelationReport check_relations(const ChartCover& cover, const LinftyStructure& l, int window, int p_max);

// Conormal-degree-k part of a TW element.
TwElement conormal_part(const TwElement& x, int k);

struct WeightDims {
    int weight = 0;
    std::size_t h0 = 0, h1 = 0;
};

struct ExtReport {
    LineBundle hom;
    int window = 0;
    std::size_t ext0 = 0, ext1 = 0;
    std::vector<WeightDims> weights;  // only the nonzero ones
    bool stabilized = true;           // nothing at the edge of the window
};

// Cech complex of Hom(F, G) = F^vee (x) G in torus weights [-window, window].
ExtReport cech_ext(const LineBundle& f, const LineBundle& g, int window);
// Same group from the TW model of its Cech diagram.
std::size_t tw_ext1(const LineBundle& f, const LineBundle& g, int window);

// (h0, h1) with h0 - h1 = cochain on the overlap, h0 in z and h1 in w; nothing if not a coboundary.
std::optional<std::pair<Laurent, Laurent>> solve_coboundary(const LineBundle& hom, const Laurent& cochain);

struct ClassReport {
    std::string name;   // a3, l2, ...
    std::string group;  // Ext1(S^2 N, T_X)
    int k = 0;
    bool precondition = false;
    bool cocycle = false;  // [d_TW, a] = 0 on the sampled slices
    std::size_t ext0 = 0, ext1 = 0, tw_ext1 = 0;
    bool stabilized = true;
    std::optional<bool> vanishes;
    bool lift_built = false;
    bool lift_verified = false;
    std::vector<std::string> notes;
};

// Result of clearing a class: the lift as chart derivations and the gauged transition.
struct Lift {
    Derivation h0, h1;
    FilteredAutomorphism gauged;
};

ClassReport splitting_obstruction(const ChartCover& cover, const FilteredAutomorphism& phi, int k, int window,
                                  std::optional<Lift>* lift = nullptr);
ClassReport linearization_obstruction(const ChartCover& cover, const FilteredAutomorphism& phi, int k, int window,
                                      std::optional<Lift>* lift = nullptr);

struct ObstructionReport {
    CocycleReport cocycle;
    std::vector<RelationReport> relations;  // one per L-infinity structure met along the way
    std::vector<ClassReport> splitting;     // [a_1], ..., [a_order]
    std::vector<ClassReport> linearization; // [l_2], ..., [l_order]
    bool split() const;
    bool linearized() const;
    bool relations_ok() const;
};

// Clear [a_1], [a_2], ... in turn and then [l_2], [l_3], ..., gauging after every vanishing class.
ObstructionReport obstruct(const ChartCover& cover, const FilteredAutomorphism& phi01, const FilteredAutomorphism& phi10,
                           int window, int p_max = 2);

}  // namespace dsi
