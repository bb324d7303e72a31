#include "doctest.h"

#include "dsi/obstructions.hpp"
#include "oracles.hpp"
#include "random_elements.hpp"

#include <random>

using namespace dsi;

namespace {

// Laurent count for H^0 and H^1 of a line bundle with U1 frame c z^e times the U0 frame:
// sections are z^a with a >= 0 on U0, z^{e-b} with b >= 0 on U1, and every z^a on the overlap.
std::pair<std::size_t, std::size_t> laurent_count(int e, int span = 40) {
    std::size_t h0 = 0, h1 = 0;
    for (int a = -span; a <= span; ++a) {
        const bool on0 = a >= 0, on1 = a <= e;
        if (on0 && on1) ++h0;
        if (!on0 && !on1) ++h1;
    }
    return {h0, h1};
}

// A cochain is a coboundary iff it has no terms strictly between e and 0.
bool gap_oracle(const LineBundle& l, const Laurent& cochain) {
    for (const auto& [a, c] : cochain)
        if (a < 0 && a > l.e && c != 0) return false;
    return true;
}

Element zz(const ChartCover& cv, int a = 1) { return Element::slot(cv.sheaf.u01(), "z", a); }
Element nn(const ChartCover& cv, int b = 1) { return Element::slot(cv.sheaf.u01(), "n0", b); }

// z -> z/(1 - c n0) truncated at the order.
FilteredAutomorphism line_transition(const ChartCover& cv, const Rational& c) {
    Element z = zz(cv);
    Element term = zz(cv);
    for (int b = 1; b <= cv.order(); ++b) {
        term = term * nn(cv).scaled(c);
        z += term;
    }
    return FilteredAutomorphism(cv.sheaf, z, nn(cv));
}

// z -> z/(1 + z^{-2} n0).
FilteredAutomorphism conic_transition(const ChartCover& cv) {
    Element z = zz(cv);
    Element term = zz(cv);
    for (int b = 1; b <= cv.order(); ++b) {
        term = (term * zz(cv, -2) * nn(cv)).scaled(-1);
        z += term;
    }
    return FilteredAutomorphism(cv.sheaf, z, nn(cv));
}

// Random weight-preserving unipotent transition, trimmed to start in conormal degree `from`.
FilteredAutomorphism random_transition(std::mt19937& rng, const ChartCover& cv, int from = 1) {
    const int mu = cv.sheaf.mu;
    Element z = zz(cv), n = nn(cv);
    for (int b = from; b <= cv.order(); ++b) {
        z += (zz(cv, 1 - b * mu) * nn(cv, b)).scaled(testing_support::small_rational(rng));
        if (b >= std::max(from, 1) && b + 1 <= cv.order())
            n += (zz(cv, -b * mu) * nn(cv, b + 1)).scaled(testing_support::small_rational(rng));
    }
    return FilteredAutomorphism(cv.sheaf, z, n);
}

// Matrix of a linear operator on the weight-w monomials z^{w - b mu} n0^b of A(U01).
template <class Op>
oracle::Dense slice_matrix(const ChartCover& cv, int w, Op op) {
    const int order = cv.order(), mu = cv.sheaf.mu;
    const auto& alg = cv.sheaf.u01();
    std::vector<Monomial> basis;
    for (int b = 0; b <= order; ++b) basis.push_back((zz(cv, w - b * mu) * nn(cv, b)).terms().begin()->first);
    oracle::Dense m = oracle::zeros(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const Element y = op(Element(alg, basis[j]));
        for (const auto& [mono, c] : y.terms()) {
            auto it = std::find(basis.begin(), basis.end(), mono);
            REQUIRE(it != basis.end());
            m[it - basis.begin()][j] = c;
        }
    }
    return m;
}

}  // namespace

TEST_CASE("cech Ext dims of line bundles match the Laurent count") {
    for (int d = -6; d <= 6; ++d)
        for (const Rational c : {Rational(1), Rational(-3, 2)})
            for (int mu : {0, 2, -1}) {
                const LineBundle o{"O", 1, 0, 0};
                const LineBundle od{"O(d)", c, d, mu};
                const ExtReport r = cech_ext(o, od, 12);
                const auto [h0, h1] = laurent_count(d);
                INFO(("d = " + std::to_string(d) + " mu = " + std::to_string(mu)));
                CHECK(r.ext0 == h0);
                CHECK(r.ext1 == h1);
                CHECK(r.stabilized);
            }
    // Hom(F, G) twists by the dual
    const LineBundle o1{"O(1)", 1, 1, 0}, o3{"O(3)", 1, 3, 0};
    CHECK(cech_ext(o3, o1, 10).ext1 == 1);
    CHECK(cech_ext(o1, o3, 10).ext0 == 3);

    // a window too small to hold H^0 is flagged
    CHECK_FALSE(cech_ext(LineBundle{"O", 1, 0, 0}, LineBundle{"O(8)", 1, 8, 0}, 4).stabilized);

    // the TW model of the same Cech diagram agrees
    for (int d = -4; d <= 3; ++d) {
        const LineBundle o{"O", 1, 0, 0}, od{"O(d)", -1, d, 1};
        CHECK(tw_ext1(o, od, d < 0 ? -d + 1 : 2) == laurent_count(d).second);
    }
}

TEST_CASE("coboundary membership against the gap oracle") {
    std::mt19937 rng(11);
    CHECK(solve_coboundary(LineBundle{"O(-2)", 1, -2, 0}, {}));
    CHECK_FALSE(solve_coboundary(LineBundle{"O(-2)", 1, -2, 0}, {{-1, 1}}));
    for (int trial = 0; trial < 60; ++trial) {
        const int e = static_cast<int>(rng() % 9) - 5;
        const LineBundle l{"L", testing_support::small_rational(rng) == 0 ? Rational(2) : Rational(-1), e, 0};
        Laurent cochain;
        for (int a = -6; a <= 6; ++a)
            if (rng() % 3 == 0) cochain[a] = testing_support::small_rational(rng);
        std::erase_if(cochain, [](const auto& kv) { return kv.second == 0; });
        const auto sol = solve_coboundary(l, cochain);
        CHECK(sol.has_value() == gap_oracle(l, cochain));
        if (!sol) continue;
        // h0 - c z^e h1(1/z) reproduces the cochain
        Laurent back = sol->first;
        for (const auto& [b, v] : sol->second) back[e - b] -= l.c * v;
        std::erase_if(back, [](const auto& kv) { return kv.second == 0; });
        CHECK(back == cochain);
        for (const auto& [a, v] : sol->first) CHECK(a >= 0);
        for (const auto& [b, v] : sol->second) CHECK(b >= 0);
    }
}

TEST_CASE("log of a unipotent transition") {
    const ChartCover line = p1_cover(1, 3, 4);
    const auto id = FilteredAutomorphism::identity(line.sheaf);
    const Derivation t0 = log_cocycle(id);
    CHECK(t0.apply(zz(line)).is_zero());
    CHECK(t0.apply(nn(line)).is_zero());

    // n -> n + n^2 at order 3 has log n -> n^2 - n^3
    const FilteredAutomorphism sq(line.sheaf, zz(line), nn(line) + nn(line, 2));
    const Derivation t = log_cocycle(sq);
    CHECK(t.apply(nn(line)) == nn(line, 2) - nn(line, 3));
    CHECK(t.apply(zz(line)).is_zero());

    // not unipotent
    CHECK_THROWS_AS(log_cocycle(FilteredAutomorphism(line.sheaf, zz(line), nn(line).scaled(2))), NotUnipotent);
    CHECK_THROWS_AS(log_cocycle(FilteredAutomorphism(line.sheaf, zz(line) + nn(line), nn(line))), NotUnipotent);

    // the matrix of T on every weight slice is the matrix log of phi's
    std::mt19937 rng(5);
    for (int mu : {0, 1, 2}) {
        const ChartCover cv = p1_cover(mu == 0 ? 1 : 4, 3, 4, mu);
        for (int trial = 0; trial < 8; ++trial) {
            const auto phi = random_transition(rng, cv);
            CHECK(phi.unipotence_defects().empty());
            CHECK(phi.multiplicativity_defects().empty());
            const Derivation tt = log_cocycle(phi);
            CHECK(FilteredAutomorphism::exp(cv.sheaf, tt) == phi);
            for (int w = -3; w <= 3; ++w) {
                const auto mphi = slice_matrix(cv, w, [&](const Element& x) { return phi.apply(x); });
                const auto mt = slice_matrix(cv, w, [&](const Element& x) { return cv.sheaf.truncate(tt.apply(x)); });
                CHECK(mt == oracle::log_unipotent(mphi));
            }
        }
    }
}

TEST_CASE("verify_cocycle locates a corrupted generator") {
    const ChartCover line = p1_cover(1, 3, 4);
    const auto id = FilteredAutomorphism::identity(line.sheaf);
    CHECK(verify_cocycle(line, id, id).ok());

    const auto phi = line_transition(line, 2);
    CHECK(verify_cocycle(line, phi, inverse(phi)).ok());
    CHECK(inverse(phi).after(phi) == id);

    const auto inv = inverse(phi);
    const FilteredAutomorphism bad(line.sheaf, inv.z_image() + zz(line) * nn(line, 2), inv.n_image());
    const auto r = verify_cocycle(line, phi, bad);
    REQUIRE_FALSE(r.ok());
    bool located = false;
    for (const auto& f : r.failures) located = located || f.find("on z") != std::string::npos;
    CHECK(located);

    // a transition that moves torus weight is rejected as well
    const FilteredAutomorphism moved(line.sheaf, zz(line) + nn(line), nn(line));
    CHECK_FALSE(verify_cocycle(line, moved, moved).ok());
}

TEST_CASE("L-infinity structure maps and their relations") {
    std::mt19937 rng(23);
    SUBCASE("trivial cocycle") {
        const ChartCover line = p1_cover(1, 3, 3);
        const auto l = linfty_from_cocycle(line, FilteredAutomorphism::identity(line.sheaf));
        for (int k = 0; k <= 3; ++k) {
            CHECK(l.anchor_zero(k));
            CHECK(l.bracket_zero(k));
        }
        CHECK(check_relations(line, l, 2, 2).ok());
    }
    SUBCASE("linear mod order k+1 gives a_i = 0 for i <= k") {
        const ChartCover line = p1_cover(1, 3, 3);
        for (int k = 0; k <= 2; ++k) {
            const auto phi = random_transition(rng, line, k + 1);
            const auto l = linfty_from_cocycle(line, phi);
            for (int i = 0; i <= k; ++i) CHECK(l.anchor_zero(i));
        }
    }
    SUBCASE("relations on random cocycles") {
        for (auto [m, mu] : {std::pair{1, 0}, std::pair{4, 2}, std::pair{2, 1}}) {
            const ChartCover cv = p1_cover(m, 3, 2, mu);
            for (int trial = 0; trial < 2; ++trial) {
                const auto l = linfty_from_cocycle(cv, random_transition(rng, cv));
                CHECK(l.anchor_zero(0));
                CHECK(l.bracket_zero(0));
                CHECK(l.bracket_zero(1));
                const auto r = check_relations(cv, l, 2, 2);
                INFO((r.failures.empty() ? std::string() : r.failures.front()));
                CHECK(r.ok());
                CHECK(r.checked > 0);
            }
        }
    }
    SUBCASE("l2 is linear once a1 and a2 vanish") {
        const ChartCover cv = p1_cover(2, 3, 2, 1);
        const FilteredAutomorphism phi(cv.sheaf, zz(cv), nn(cv) + (zz(cv, -1) * nn(cv, 2)) + (zz(cv, -2) * nn(cv, 3)).scaled(3));
        const auto l = linfty_from_cocycle(cv, phi);
        CHECK(l.anchor_zero(1));
        CHECK(l.anchor_zero(2));
        CHECK_FALSE(l.bracket_zero(2));
        CHECK(check_relations(cv, l, 2, 2).ok());
    }
    SUBCASE("diagonal model has vanishing a1 class") {
        // N = T_X = O(2): Ext^1(N, T_X) = H^1(O) = 0 whatever the cocycle
        const ChartCover diag = p1_cover(2, 2, 4, 1);
        for (int trial = 0; trial < 3; ++trial) {
            const auto r = splitting_obstruction(diag, random_transition(rng, diag), 0, 8);
            CHECK(r.ext1 == 0);
            CHECK(r.vanishes == std::optional<bool>(true));
        }
    }
}

TEST_CASE("splitting obstructions on the line and the conic") {
    const int order = 3;
    SUBCASE("line in P2") {
        const ChartCover line = p1_cover(1, order, 7);
        const auto phi = line_transition(line, 1);
        auto cur = phi;
        for (int k = 0; k < order; ++k) {
            std::optional<Lift> lift;
            const auto r = splitting_obstruction(line, cur, k, 7, &lift);
            INFO(r.name);
            CHECK(r.precondition);
            CHECK(r.cocycle);
            // Ext^1(S^{k+1} N, T_X) = H^1(O(2 - (k+1)))
            CHECK(r.ext1 == laurent_count(2 - (k + 1)).second);
            CHECK(r.tw_ext1 == r.ext1);
            CHECK(r.vanishes == std::optional<bool>(true));
            CHECK(r.lift_built);
            CHECK(r.lift_verified);
            REQUIRE(lift);
            cur = lift->gauged;
            const auto l = linfty_from_cocycle(line, cur);
            for (int i = 0; i <= k + 1; ++i) CHECK(l.anchor_zero(i));
        }
    }
    SUBCASE("conic in P2") {
        const ChartCover conic = p1_cover(4, order, 10, 2);
        const auto phi = conic_transition(conic);
        const auto l = linfty_from_cocycle(conic, phi);
        const auto r = splitting_obstruction(conic, phi, 0, 10);
        CHECK(r.ext1 == 1);
        const LineBundle hom = conic.normal().dual().tensor(conic.tangent());
        REQUIRE(r.vanishes.has_value());
        CHECK(*r.vanishes == gap_oracle(hom, l.anchor_cochain(1)));
        CHECK_FALSE(r.lift_built);
        // preconditions fail past a nonvanishing class
        CHECK_FALSE(splitting_obstruction(conic, phi, 1, 10).precondition);
    }
    SUBCASE("gauge-equivalent cocycles give the same verdicts") {
        std::mt19937 rng(41);
        for (auto [m, mu] : {std::pair{1, 0}, std::pair{4, 2}, std::pair{3, 1}, std::pair{1, 1}}) {
            const ChartCover cv = p1_cover(m, order, 9, mu);
            const auto phi = random_transition(rng, cv);
            // exp(g0) phi exp(-g1) for random chart derivations
            Vec g0 = zero_vec(cv.action.lie.g0.dim()), g1 = zero_vec(cv.action.lie.g1.dim());
            for (auto& x : g0) x = testing_support::small_rational(rng);
            for (auto& x : g1) x = testing_support::small_rational(rng);
            Derivation d0(cv.sheaf.u01(), 0), d1(cv.sheaf.u01(), 0);
            d0.set("z", Element(cv.sheaf.u01())).set("n0", Element(cv.sheaf.u01()));
            d1 = d0;
            for (std::size_t i = 0; i < g0.size(); ++i) d0 = d0 + cv.action.apply(cv.action.lie.rho0.column(i)).scaled(g0[i]);
            for (std::size_t i = 0; i < g1.size(); ++i) d1 = d1 + cv.action.apply(cv.action.lie.rho1.column(i)).scaled(g1[i]);
            const auto phi2 = FilteredAutomorphism::exp(cv.sheaf, d0).after(phi).after(FilteredAutomorphism::exp(cv.sheaf, d1.scaled(-1)));
            const auto a = splitting_obstruction(cv, phi, 0, 9), b = splitting_obstruction(cv, phi2, 0, 9);
            CHECK(a.vanishes == b.vanishes);
            const auto ra = obstruct(cv, phi, inverse(phi), 9), rb = obstruct(cv, phi2, inverse(phi2), 9);
            for (const auto* rep : {&ra, &rb}) {
                std::size_t lifts = 0;
                for (const auto& list : {rep->splitting, rep->linearization})
                    for (const auto& c : list) {
                        INFO(c.name);
                        CHECK(c.notes.empty() == c.precondition);
                        if (!c.lift_built) continue;
                        ++lifts;
                        CHECK(c.lift_verified);
                    }
                CHECK(lifts > 0);
                CHECK(rep->relations_ok());
            }
            REQUIRE(ra.splitting.size() == rb.splitting.size());
            for (std::size_t i = 0; i < ra.splitting.size(); ++i) CHECK(ra.splitting[i].vanishes == rb.splitting[i].vanishes);
            REQUIRE(ra.linearization.size() == rb.linearization.size());
            for (std::size_t i = 0; i < ra.linearization.size(); ++i)
                CHECK(ra.linearization[i].vanishes == rb.linearization[i].vanishes);
        }
    }
}

TEST_CASE("linearization obstructions") {
    SUBCASE("line in P2: [l2] lives in H^1(O(-1)) = 0") {
        const ChartCover line = p1_cover(1, 3, 7);
        const FilteredAutomorphism phi(line.sheaf, zz(line), nn(line) + nn(line, 2).scaled(5));
        std::optional<Lift> lift;
        const auto r = linearization_obstruction(line, phi, 2, 7, &lift);
        CHECK(r.precondition);
        CHECK(r.cocycle);
        CHECK(r.ext1 == 0);
        CHECK(r.vanishes == std::optional<bool>(true));
        CHECK(r.lift_verified);
        REQUIRE(lift);
        CHECK(linfty_from_cocycle(line, lift->gauged).bracket_zero(2));
    }
    SUBCASE("negative control with a nonzero [l2]") {
        // N = O(2), l2 = z^{-1} n0^2 d/dn0 represents the generator of H^1(N^vee)
        const ChartCover cv = p1_cover(2, 3, 6, 1);
        const FilteredAutomorphism phi(cv.sheaf, zz(cv), nn(cv) + zz(cv, -1) * nn(cv, 2));
        const auto r = linearization_obstruction(cv, phi, 2, 6);
        CHECK(r.precondition);
        CHECK(r.ext1 == 1);
        CHECK(r.vanishes == std::optional<bool>(false));
        CHECK_FALSE(r.lift_built);
    }
    SUBCASE("preconditions are enforced") {
        const ChartCover line = p1_cover(1, 3, 7);
        CHECK_FALSE(linearization_obstruction(line, line_transition(line, 1), 2, 7).precondition);
    }
}

TEST_CASE("full pipeline") {
    SUBCASE("trivial cocycle: everything vanishes") {
        const ChartCover diag = p1_cover(2, 3, 8, 1);
        const auto id = FilteredAutomorphism::identity(diag.sheaf);
        const auto r = obstruct(diag, id, id, 8);
        CHECK(r.cocycle.ok());
        CHECK(r.split());
        CHECK(r.linearized());
        CHECK(r.relations_ok());
    }
    SUBCASE("line in P2") {
        const ChartCover line = p1_cover(1, 3, 7);
        const auto phi = line_transition(line, 1);
        const auto r = obstruct(line, phi, inverse(phi), 7);
        CHECK(r.split());
        CHECK(r.linearized());
        CHECK(r.relations_ok());
        REQUIRE(r.splitting.size() == 3);
        REQUIRE(r.linearization.size() == 2);
        CHECK(r.splitting[0].ext1 == 0);
        CHECK(r.splitting[1].ext1 == 0);
        CHECK(r.linearization[0].ext1 == 0);
    }
    SUBCASE("conic in P2") {
        const ChartCover conic = p1_cover(4, 3, 10, 2);
        const auto phi = conic_transition(conic);
        const auto r = obstruct(conic, phi, inverse(phi), 10);
        CHECK(r.relations_ok());
        REQUIRE(!r.splitting.empty());
        CHECK(r.splitting[0].ext1 == 1);
        const LineBundle hom = conic.normal().dual().tensor(conic.tangent());
        const bool oracle = gap_oracle(hom, linfty_from_cocycle(conic, phi).anchor_cochain(1));
        CHECK(r.splitting[0].vanishes == std::optional<bool>(oracle));
        CHECK(r.split() == (oracle && r.splitting.back().vanishes == std::optional<bool>(true)));
    }
}
