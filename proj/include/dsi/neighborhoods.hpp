#pragma once

#include "dsi/resolve.hpp"

#include <map>
#include <string>
#include <vector>

namespace dsi {

struct IdentityCheck {
    std::string name;
    bool ok = true;
    std::vector<std::string> failures;  // "generator: lhs != rhs"
};

// S(E[1]) (x) S(E): odd e_i of degree -1 and even form generators f_i of degree 0,
// both of weight w(e_i).
struct DeRhamComplex {
    KoszulData koszul;
    AlgebraPtr algebra;
    std::vector<std::size_t> e_slots;
    std::vector<std::size_t> f_slots;
    Derivation d_dr;    // e_i -> f_i
    Derivation iota_q;  // f_i -> s_i
    Derivation l_q;     // e_i -> s_i, f_i -> 0
    Derivation total;   // d_dr + l_q

    int form_degree(const Monomial& m) const;
    Element truncate(const Element& e, int k) const;  // drop terms of form degree > k
};

DeRhamComplex build_de_rham(const KoszulData& k);

// Cartan identity L_Q = [iota_Q, d_DR], D^2 = 0 and L_Q^2 = 0, each on every generator.
std::vector<IdentityCheck> verify_de_rham_identities(const DeRhamComplex& dr);

// Weight-w slice of Omega^(k): monomials of form degree <= k.
SliceBasis truncated_slice(const DeRhamComplex& dr, int k, int w);
SlicedComplex truncated_complex(const DeRhamComplex& dr, int k, int w);

// phi^(k) as an algebra map into O_Y: x -> x, e_i -> 0, f_i -> -s_i.
AlgebraMap phi_map(const DeRhamComplex& dr);

struct PhiWeightReport {
    int weight = 0;
    std::map<int, std::size_t> h;       // degree -> dim H(Omega^(k))_w
    std::size_t target_dim = 0;         // dim (O_Y / I^{k+1})_w
    std::size_t phi_rank = 0;           // rank of phi on degree 0, modulo I^{k+1}
    bool chain_map = true;              // phi(D b) in I^{k+1}
    bool augmentation_into_ideal = true;
    bool ok = false;
};

struct PhiReport {
    int k = 0;
    std::vector<PhiWeightReport> weights;
    std::size_t cumulative_h0 = 0;
    std::size_t cumulative_target = 0;
    bool ok = true;
};

PhiReport verify_phi_quasi_iso(const DeRhamComplex& dr, int k, int w_max);

// Doubled resolution O_X~ (x)_{O_Y} O_X~ on e_i and e_i' with Q(e_i) = Q(e_i') = s_i.
struct SelfIntersection {
    KoszulData koszul;
    AlgebraPtr algebra;
    std::vector<std::size_t> e_slots;
    std::vector<std::size_t> e2_slots;
    Derivation q;
    std::vector<Element> diagonal_generators;  // u_i = e_i - e_i'

    // Swap e_i <-> e_i'.
    Element swap(const Element& e) const;
};

SelfIntersection build_self_intersection(const KoszulData& k);

SlicedComplex self_intersection_complex(const SelfIntersection& si, int w);
// Weight-w slice of O_X~xX~ / J^{k+1}.
SlicedComplex diagonal_quotient_complex(const SelfIntersection& si, int k, int w);

struct TorReport {
    std::map<int, std::size_t> total;                    // degree -> sum over weights
    std::map<int, std::map<int, std::size_t>> by_weight;  // weight -> degree -> dim
    bool swap_symmetric = true;
};

TorReport tor_dims(const SelfIntersection& si, int w_max);

struct CompletionReport {
    int k_max = 0;
    std::map<int, bool> agrees;                                   // k -> all slices agree
    std::map<int, std::map<int, std::pair<std::size_t, std::size_t>>> totals;  // k -> degree -> (full, quotient)
    std::optional<int> smallest_agreeing;  // smallest k with agreement for all k' in [k, k_max]
};

CompletionReport verify_completion(const SelfIntersection& si, int k_max, int w_max);

}  // namespace dsi
