#pragma once

#include "dsi/neighborhoods.hpp"

#include <map>
#include <string>
#include <vector>

namespace dsi {

// An O_Y-linear vector field sum_j c_j d/de_j, stored by its coefficients c_j.
using VectorField = std::vector<Element>;

// T = Der_{O_Y}(A) for A = O_Y[e_1..e_r], free on d/de_i of degree +1 and weight -w_i.
struct TangentAlgebroid {
    KoszulData koszul;
    AlgebraPtr algebra;
    std::vector<Derivation> coordinate_fields;
    std::vector<std::vector<VectorField>> bracket_table;  // [d_i, d_j]
    std::vector<VectorField> differential_table;         // [Q, d_i]

    std::size_t rank() const { return koszul.rank(); }
    Derivation to_derivation(const VectorField& v) const;
    VectorField coordinates(const Derivation& d) const;
    VectorField field(std::size_t i, const Element& coefficient) const;  // c d/de_i
    VectorField bracket(const VectorField& a, const VectorField& b) const;
    VectorField differential(const VectorField& a) const;  // [Q, a]
    std::optional<int> degree(const VectorField& v) const;
};

TangentAlgebroid build_tangent(const KoszulData& k);

// Weight-w slice of T with differential [Q, -]; basis labels read "m*d/de_i".
SlicedComplex tangent_complex(const TangentAlgebroid& t, int w);

struct TangentReport {
    std::map<int, std::map<int, std::size_t>> h;  // weight -> degree -> dim
    std::map<int, std::size_t> expected_h1;       // weight -> sum_i dim (O_X)_{w + w_i}
    bool square_zero = true;
    bool concentrated = true;
    bool matches_normal_bundle = true;
    bool ok() const { return square_zero && concentrated && matches_normal_bundle; }
};

// Slices from weight -max(w_i) to w_max.
TangentReport check_tangent(const TangentAlgebroid& t, int w_max);

struct CeReport {
    int k = 0;
    std::map<int, bool> slice_agrees;  // weight -> ev * D_Omega == d_CE * ev and ev invertible
    std::vector<std::string> disagreements;
    bool ok = true;
};

// Chevalley-Eilenberg cochains of order <= k with the abstract differential
// (d xi)(v_0..v_p) = Q(xi(v)) + sum_j rho(v_j) xi(..^j..) - sum_j xi(..[Q,v_j]..) - sum_{j<l} xi([v_j,v_l], ..)
// on the coordinate basis, compared with Omega^(k) through evaluation by contraction.
CeReport ce_consistency(const TangentAlgebroid& t, const DeRhamComplex& dr, int k, int w_max);

// Truncated enveloping algebra: normally ordered sum_alpha a_alpha d^alpha with |alpha| <= order.
// Odd coordinate fields square to zero, so alpha is a subset stored as a bit mask.
struct UeaElement {
    std::map<unsigned, Element> terms;

    bool is_zero() const;
    bool operator==(const UeaElement& o) const;
};

struct TruncatedUEA {
    TangentAlgebroid tangent;
    int order = 1;

    UeaElement zero() const { return {}; }
    UeaElement from_algebra(const Element& a) const;
    UeaElement from_field(const VectorField& v) const;
    UeaElement monomial(const Element& a, unsigned mask) const;
    UeaElement add(const UeaElement& a, const UeaElement& b) const;
    UeaElement scaled(const UeaElement& a, const Rational& c) const;
    UeaElement multiply(const UeaElement& a, const UeaElement& b) const;
    UeaElement differential(const UeaElement& a) const;
    std::optional<int> degree(const UeaElement& a) const;
    int filtration(const UeaElement& a) const;  // largest |alpha|, -1 for zero
    // Action on A: a d^alpha (x) = a * d_{i1}(d_{i2}(... x)).
    Element act(const UeaElement& p, const Element& x) const;
    std::string str(const UeaElement& a) const;

    // Delta(a d^alpha) = sum over splittings alpha = beta + gamma of sign * a d^beta (x) d^gamma.
    std::map<std::pair<unsigned, unsigned>, Element> coproduct(const UeaElement& a) const;
};

TruncatedUEA build_uea(const TangentAlgebroid& t, int order);

struct UeaReport {
    std::map<int, std::map<int, std::size_t>> graded_dims;  // weight -> filtration -> dim F^j/F^{j-1}
    std::map<int, std::map<int, std::size_t>> pbw_dims;     // weight -> j -> dim (Lambda^j_A g)_w
    bool pbw = true;
    bool leibniz = true;
    bool associative = true;
    bool filtration_multiplicative = true;
    bool relations = true;
    bool coassociative = true;
    bool ok() const { return pbw && leibniz && associative && filtration_multiplicative && relations && coassociative; }
};

UeaReport check_uea(const TruncatedUEA& u, int w_max, unsigned seed = 1);

// Jets: left A-linear maps U^{<=k} -> A, stored by their values <d^alpha, phi>.
struct JetElement {
    std::map<unsigned, Element> values;
    bool operator==(const JetElement& o) const;
};

struct TruncatedJet {
    TruncatedUEA uea;

    JetElement left_unit(const Element& a) const;   // P -> a P(1)
    JetElement right_unit(const Element& a) const;  // P -> P(a)
    JetElement multiply(const JetElement& a, const JetElement& b) const;
    JetElement differential(const JetElement& a) const;
    Element evaluate(const JetElement& j, const UeaElement& p) const;
    std::optional<int> degree(const JetElement& j) const;
};

TruncatedJet build_jets(const TruncatedUEA& u);

// a (x) a' -> (P -> a P(a')) on the doubled algebra, with e_i in the first factor and e_i' in the second.
JetElement jet_comparison(const TruncatedJet& j, const SelfIntersection& si, const Element& x);

struct JetReport {
    int order = 0;
    std::map<int, std::map<int, std::pair<std::size_t, std::size_t>>> ranks;  // weight -> degree -> (rank, dim J)
    std::map<int, std::map<int, std::size_t>> quotient_dims;                   // weight -> degree
    bool ideal_in_kernel = true;
    bool isomorphism = true;
    bool chain_map = true;
    bool multiplicative = true;
    bool units = true;
    std::vector<std::string> failures;
    bool ok() const { return ideal_in_kernel && isomorphism && chain_map && multiplicative && units; }
};

JetReport check_jet_comparison(const TruncatedJet& j, const SelfIntersection& si, int w_max, unsigned seed = 1);

// O_Y-linear endomorphisms of A, determined by images of the exterior basis E^beta.
struct EndReport {
    int w_lo = 0;
    int w_hi = 0;
    std::map<int, std::map<int, std::size_t>> h;  // weight -> degree -> dim
    std::map<int, std::size_t> ext;                // degree -> total over the window
    std::map<int, std::size_t> uea_image_rank;     // degree -> rank of H(U^{<=k}) -> H(End)
    std::map<int, std::size_t> uea_h;              // degree -> dim H(U^{<=k}) over the window
    bool chain_map = true;
    bool stabilized = true;  // boundary weights of the window carry no cohomology
    bool ok() const { return chain_map && stabilized; }
};

SlicedComplex end_complex_slice(const KoszulData& k, int w);
EndReport end_complex(const TruncatedUEA& u, int w_lo, int w_hi);

}  // namespace dsi
