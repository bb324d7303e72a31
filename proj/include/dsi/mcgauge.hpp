#pragma once

#include "dsi/thomwhitney.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dsi {

// Finite-dimensional graded Lie algebra over Q with a differential, by structure constants.
class NilpotentDgla {
public:
    NilpotentDgla() = default;
    NilpotentDgla(std::vector<std::string> names, std::vector<int> degrees);

    // Strictly upper triangular n x n matrices in degree 0, basis E_ij (i < j) in row-major order.
    static NilpotentDgla upper_triangular(int n);
    static NilpotentDgla abelian(std::vector<std::string> names);

    std::size_t dim() const { return names_.size(); }
    int degree(std::size_t i) const { return degrees_[i]; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    std::optional<std::size_t> find(std::string_view name) const;
    Vec basis_vector(std::size_t i) const;

    // Sets [e_i, e_j] and, by graded antisymmetry, [e_j, e_i].
    void set_bracket(std::size_t i, std::size_t j, const Vec& value);
    void set_differential(std::size_t i, const Vec& value);
    const Vec& bracket_of(std::size_t i, std::size_t j) const { return brackets_[i][j]; }
    const Vec& differential_of(std::size_t i) const { return diff_[i]; }

    Vec bracket(const Vec& a, const Vec& b) const;
    Vec d(const Vec& a) const;

    // Violations of antisymmetry, Jacobi, the derivation rule and d^2 = 0 on basis elements.
    std::vector<std::string> verify() const;
    // Length of the lower central series; nothing when it does not terminate.
    std::optional<int> nilpotency_class() const;

    std::string format(const Vec& v) const;

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::vector<std::vector<Vec>> brackets_;
    std::vector<Vec> diff_;
};

// Graded-commutative coefficients for B (x) g; terms of weight above the cap are dropped.
struct CoefficientAlgebra {
    AlgebraPtr algebra;
    std::optional<Derivation> d;
    int weight_cap = -1;  // negative: no truncation

    static CoefficientAlgebra rationals();
    // Forms on the n-simplex, optionally modulo polynomial degree > cap (a dg ideal).
    static CoefficientAlgebra forms(int n, int cap = -1);

    Element truncate(const Element& x) const;
};

// B (x) g with [b e_i, b' e_j] = (-1)^{|e_i||b'|} b b' [e_i, e_j] and d(b e_i) = db e_i + (-1)^{|b|} b de_i.
class TensorDgla {
public:
    using Elem = std::vector<Element>;  // coefficient of each basis vector of g

    TensorDgla(NilpotentDgla g, CoefficientAlgebra b);

    const NilpotentDgla& lie() const { return g_; }
    const CoefficientAlgebra& coefficients() const { return b_; }
    int nilpotency_class() const { return class_; }

    Elem zero() const;
    Elem constant(const Vec& v) const;
    Elem pure(std::size_t i, const Element& coefficient) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem scaled(const Elem& a, const Rational& c) const;
    Elem bracket(const Elem& a, const Elem& b) const;
    Elem d(const Elem& a) const;
    bool is_zero(const Elem& a) const;
    bool equal(const Elem& a, const Elem& b) const { return is_zero(add(a, scaled(b, -1))); }
    std::optional<int> degree(const Elem& a) const;
    // Constant part as a vector of g, when every coefficient is a scalar.
    std::optional<Vec> scalars(const Elem& a) const;
    // Value at a vertex of the simplex (coefficients must be forms on a simplex): t_k -> [k == vertex].
    Vec at_vertex(const Elem& a, int vertex) const;
    std::string str(const Elem& a) const;

private:
    NilpotentDgla g_;
    CoefficientAlgebra b_;
    int class_ = 0;
};

// log(e^a e^b) for degree-0 a, b; exact for nilpotency class <= 4.
TensorDgla::Elem bch(const TensorDgla& l, const TensorDgla::Elem& a, const TensorDgla::Elem& b);
// e^a * theta = e^{ad a}(theta) - ((e^{ad a} - 1) / ad a)(da).
TensorDgla::Elem gauge(const TensorDgla& l, const TensorDgla::Elem& a, const TensorDgla::Elem& theta);
// d theta + 1/2 [theta, theta].
TensorDgla::Elem mc_defect(const TensorDgla& l, const TensorDgla::Elem& theta);
bool is_mc(const TensorDgla& l, const TensorDgla::Elem& theta);

// Vec-level conveniences for g itself.
Vec bch(const NilpotentDgla& g, const Vec& a, const Vec& b);

struct NotMaurerCartan : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Restriction of an element of Omega_n (x) g to the edge from vertex i to vertex j, as Omega_1 (x) g.
TensorDgla::Elem restrict_to_edge(const TensorDgla& forms_g, const TensorDgla::Elem& x, int i, int j);

// log Y(s) for the transport Y' = Y A(s), Y(0) = 1, of theta = A(s) ds in Omega_1 (x) g,
// as a degree-0 element of Omega_1 (x) g. g must sit in degree 0 with class <= 3.
TensorDgla::Elem transport_log(const TensorDgla& edge_g, const TensorDgla::Elem& theta);

// Holonomy of d + theta along the edge i -> j of the simplex, as its logarithm in g.
// Rejects theta that is not Maurer-Cartan.
Vec holonomy(const TensorDgla& forms_g, const TensorDgla::Elem& theta, int i, int j);

// Two-chart cosimplicial nilpotent Lie algebra in degree 0: g(U0), g(U1) restrict to g(U01).
struct CechLie {
    NilpotentDgla g0, g1, g01;
    RatMatrix rho0, rho1;  // g0 -> g01 and g1 -> g01

    std::vector<std::string> verify() const;  // restrictions are Lie morphisms
    TensorDgla edge() const;                  // Omega_1 (x) g01
    TensorDgla group() const;                 // g01 with scalar coefficients
};

// Degree-0 element of TW(g): chart values and a function on the edge restricting to them.
struct TwGauge {
    Vec a0, a1;
    TensorDgla::Elem edge;
};

TensorDgla::Elem cocycle_to_mc(const CechLie& c, const Vec& t);  // T dt1
Vec mc_to_cocycle(const CechLie& c, const TensorDgla::Elem& theta);
// Action of (a0, a1) on cocycles: T -> log(e^{rho0 a0} e^T e^{-rho1 a1}).
Vec gauge_cocycle(const CechLie& c, const Vec& a0, const Vec& a1, const Vec& t);
bool valid_gauge(const CechLie& c, const TwGauge& a);
TensorDgla::Elem gauge_mc(const CechLie& c, const TwGauge& a, const TensorDgla::Elem& theta);
// Gauge element vanishing at both vertices taking theta to cocycle_to_mc(mc_to_cocycle(theta)).
TwGauge round_trip_gauge(const CechLie& c, const TensorDgla::Elem& theta);
// (a0, a1) with gauge_cocycle(a0, a1, t) = t2, solved along the lower central series.
std::optional<std::pair<Vec, Vec>> connect_cocycles(const CechLie& c, const Vec& t, const Vec& t2);

// Abelian Cech Lie algebra of the degree-0 weight slices of a two-level diagram.
CechLie abelian_cech(const CosimplicialDiagram& v, int weight);
// Number of gauge orbits met by a list of cocycles.
std::size_t count_orbits(const CechLie& c, const std::vector<Vec>& cocycles);

// S^{<=order}(N^vee) for N = O(m) on the two-chart cover of P^1: z = x1/x0 and w = 1/z, with
// conormal generators n0, n1 = c z^{-m} n0. Torus weights: z -> 1, n0 -> mu, so n1 -> mu - m.
struct TruncatedNormalSheaf {
    int m = 0;
    int order = 2;
    int window = 0;
    int mu = 0;
    Rational c = 1;
    CosimplicialDiagram diagram;

    const AlgebraPtr& u0() const { return diagram.levels[0][0].algebra; }
    const AlgebraPtr& u1() const { return diagram.levels[0][1].algebra; }
    const AlgebraPtr& u01() const { return diagram.levels[1][0].algebra; }
    // Restriction from U1 to the overlap, w -> 1/z and n1 -> c z^{-m} n0.
    AlgebraMap from_u1() const;
    // Drop terms of conormal degree above the order.
    Element truncate(const Element& x) const;
};

// Laurent windows keep every slice of torus weight in [-window, window] complete.
TruncatedNormalSheaf normal_sheaf(int m, int order, int window, int mu = 0, const Rational& c = 1);

// Q(x) = dt1 * D(x) on the overlap level of TW of the sheaf, truncated; zero on level 0.
TwElement overlap_twist(const TwModel& model, const TruncatedNormalSheaf& s, const Derivation& d, const TwElement& x);

// Cech Lie algebra of weight-0 unipotent derivations spanned by a: z -> z n0, b: n0 -> n0^2
// and c = [a, b], regular on U0; g(U1) = 0. alpha sends the basis of g01 to derivations of A(U01).
struct DerivationAction {
    CechLie lie;
    std::vector<Derivation> alpha;

    Derivation apply(const Vec& v) const;
};

DerivationAction heisenberg_action(const TruncatedNormalSheaf& s);
// alpha is a Lie morphism into derivations modulo the truncation, checked on generators.
std::vector<std::string> check_action(const TruncatedNormalSheaf& s, const DerivationAction& a);

struct DeformReport {
    int weight = 0;
    int p_max = 0;
    std::size_t h0 = 0;       // dim ker(d + Q) on TW^0, the lowest degree
    std::size_t h0_next = 0;  // the same with p_max + 1
    std::vector<LevelElement> sections;  // chart values of a basis of ker(d + Q), in the chart algebras
    bool square_zero = true;
    bool preserves_equalizer = true;
    std::vector<std::string> failures;
    bool stable() const { return h0 == h0_next; }
    bool ok() const { return square_zero && preserves_equalizer && stable(); }
};

// (TW(A), d + Q) with Q = alpha(T) dt1 for theta = cocycle_to_mc(t), on one weight slice.
DeformReport deform_tw(const TruncatedNormalSheaf& s, const DerivationAction& a, const Vec& t, int weight, int p_max);

}  // namespace dsi
