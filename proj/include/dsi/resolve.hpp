#pragma once

#include "dsi/gca.hpp"

#include <string>
#include <vector>

namespace dsi {

// O_Y[e_1..e_r] with Q(e_i) = s_i, e_i odd of degree -1 and weight equal to the weight of s_i.
struct KoszulData {
    AlgebraPtr base;      // O_Y alone
    AlgebraPtr algebra;   // O_Y together with the odd generators
    std::vector<Element> section;        // s_i as elements of `algebra`
    std::vector<Element> base_section;   // s_i as elements of `base`
    Derivation q;
    std::vector<std::size_t> zero_components;

    std::size_t rank() const { return section.size(); }
    std::string generator_name(std::size_t i) const { return algebra->generators()[i].name; }
};

// Section components are parsed against the base ring.
KoszulData build_koszul(std::vector<Variable> vars, const std::vector<std::string>& section,
                        const std::string& generator_prefix = "e");
KoszulData build_koszul(const AlgebraPtr& base, const std::vector<Element>& section,
                        const std::string& generator_prefix = "e");

// Base monomials of weight w modulo the weight-w part of the ideal generated by `gens`.
// Returns the span of the ideal inside the slice basis of the base ring.
Echelon ideal_slice(const AlgebraPtr& base, const std::vector<Element>& gens, const SliceBasis& slice);

// Products of `power` generators (with repetition), the generating set of I^power.
std::vector<Element> ideal_power_generators(const std::vector<Element>& gens, int power);

struct WeightCohomology {
    int weight = 0;
    std::map<int, std::size_t> dims;  // degree -> dim H
    std::size_t expected_h0 = 0;
    std::map<int, std::vector<std::string>> representatives;  // nonzero classes off degree 0
    int euler_slice = 0;
    int euler_exterior = 0;
    bool ok = false;

    std::size_t h(int degree) const {
        auto it = dims.find(degree);
        return it == dims.end() ? 0 : it->second;
    }
};

struct ResolutionReport {
    std::vector<WeightCohomology> weights;
    bool ok = true;
    std::vector<std::string> diagnostics;
};

ResolutionReport check_resolution(const KoszulData& k, int w_max);

}  // namespace dsi
