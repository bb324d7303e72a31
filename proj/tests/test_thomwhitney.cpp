#include "doctest.h"

#include "dsi/thomwhitney.hpp"

#include <random>

using namespace dsi;

namespace {

Rational q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

mpz_class binomial(long n, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Iterated integral of t1^a t2^b over {t1, t2 >= 0, t1 + t2 <= 1}: integrate t2 first,
// then expand (1 - t1)^{b+1} and integrate term by term.
Rational iterated_triangle(long a, long b) {
    Rational s = 0;
    for (long j = 0; j <= b + 1; ++j) {
        Rational term(binomial(b + 1, j), a + j + 1);
        term.canonicalize();
        s += j % 2 ? -term : term;
    }
    Rational r = s / (b + 1);
    r.canonicalize();
    return r;
}

// Laurent Cech count for O(d) on P^1 at torus weight j: z^j x0^d extends over U0 iff j >= 0 and over U1 iff j <= d.
std::pair<int, int> laurent_cech_count(int d, int window) {
    int h0 = 0, h1 = 0;
    for (int j = -window; j <= window; ++j) {
        const bool u0 = j >= 0, u1 = j <= d;
        h0 += u0 && u1;
        h1 += !u0 && !u1;
    }
    return {h0, h1};
}

// A = Q[x, y] with odd e1, e2 of degree -1 and weight 1, and Q(e1) = Q(e2) = x.
struct KoszulFixture {
    AlgebraPtr alg = Algebra::make({{"x", 1, false}, {"y", 1, false}}, {{"e1", -1, 1}, {"e2", -1, 1}});
    Derivation q{alg, 1};
    KoszulFixture() {
        q.set("e1", Element::slot(alg, "x"));
        q.set("e2", Element::slot(alg, "x"));
    }
    std::map<int, std::size_t> h(int w) const {
        std::map<int, std::size_t> out;
        SliceBasis b(w, slice_monomials(*alg, w));
        for (const auto& d : cohomology(slice_complex(alg, q, b), false).degrees)
            if (d.dim) out[d.degree] = d.dim;
        return out;
    }
};

Element parse(const SimplexForms& s, const std::string& text) { return parse_element(s.algebra(), text); }

}  // namespace

TEST_CASE("simplex forms: relations, d and integrals") {
    const auto& s1 = simplex_forms(1);
    const auto& s2 = simplex_forms(2);
    CHECK(s1.t(0).str() == "- t1 + 1");
    CHECK((s2.dt(0) + s2.dt(1) + s2.dt(2)).is_zero());
    CHECK(s2.d().apply(s2.t(0)) == s2.dt(0));

    for (int n = 0; n <= 3; ++n) {
        const auto& s = simplex_forms(n);
        for (const auto& [deg, ms] : s.basis(3))
            for (const auto& m : ms) CHECK(s.d().apply(s.d().apply(Element(s.algebra(), m))).is_zero());
    }

    CHECK(integrate(s1, parse(s1, "dt1")) == 1);
    CHECK(integrate(s1, parse(s1, "t1*dt1")) == q(1, 2));
    CHECK(integrate(s2, parse(s2, "dt1*dt2")) == q(1, 2));
    CHECK(integrate(simplex_forms(3), parse(simplex_forms(3), "dt1*dt2*dt3")) == q(1, 6));
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b) {
            Element f = pow(s2.t(1), a) * pow(s2.t(2), b) * s2.dt(1) * s2.dt(2);
            CHECK(integrate(s2, f) == iterated_triangle(a, b));
        }
    CHECK_THROWS(integrate(s2, parse(s2, "dt1")));
}

TEST_CASE("face pullbacks") {
    const auto& s0 = simplex_forms(0);
    const auto& s1 = simplex_forms(1);
    const auto& s2 = simplex_forms(2);
    CHECK(simplex_face(s1, s1.t(1), 0) == s0.one());
    CHECK(simplex_face(s1, s1.t(1), 1).is_zero());
    CHECK(simplex_face(s1, s1.t(0), 1) == s0.one());
    CHECK(simplex_face(s2, s2.t(0) * s2.dt(2), 1) == s1.t(0) * s1.dt(1));
    CHECK_THROWS(simplex_face(s2, s2.t(1), 3));

    // face pullbacks commute with d, and with each other as the simplicial identities say
    for (int n = 1; n <= 3; ++n) {
        const auto& s = simplex_forms(n);
        std::vector<Element> gens;
        for (int i = 0; i <= n; ++i) {
            gens.push_back(s.t(i));
            gens.push_back(s.dt(i));
        }
        gens.push_back(s.t(n) * s.t(0) * s.dt(n));
        for (const auto& g : gens) {
            for (int k = 0; k <= n; ++k)
                CHECK(simplex_face(s, s.d().apply(g), k) == simplex_forms(n - 1).d().apply(simplex_face(s, g, k)));
            if (n < 2) continue;
            const auto& s_1 = simplex_forms(n - 1);
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    CHECK(simplex_face(s_1, simplex_face(s, g, j), i) == simplex_face(s_1, simplex_face(s, g, i), j - 1));
        }
    }
}

TEST_CASE("Stokes on simplices and Whitney forms") {
    std::mt19937 rng(5);
    for (int n = 1; n <= 3; ++n) {
        const auto& s = simplex_forms(n);
        const auto& f = simplex_forms(n - 1);
        const auto basis = s.basis(3);
        for (int trial = 0; trial < 8; ++trial) {
            Element eta(s.algebra());
            for (const auto& m : basis.at(n - 1)) eta.add_term(m, q(static_cast<long>(rng() % 7) - 3));
            Rational boundary = 0;
            for (int j = 0; j <= n; ++j) boundary += (j % 2 ? -1 : 1) * integrate(f, simplex_face(s, eta, j));
            CHECK(integrate(s, s.d().apply(eta)) == boundary);
        }
        std::vector<int> all;
        for (int i = 0; i <= n; ++i) all.push_back(i);
        CHECK(integrate(s, s.whitney(all)) == 1);
        // the Whitney form of a vertex set restricts to the form of the same set on a face containing it
        CHECK(simplex_face(s, s.whitney({0}), n) == f.whitney({0}));
        CHECK(simplex_face(s, s.whitney({n}), n).is_zero());
        // d of a vertex form is the alternating sum over edges through it
        Element dsum(s.algebra());
        for (int j = 1; j <= n; ++j) dsum += s.whitney({0, j});
        CHECK(s.d().apply(s.whitney({0})) == -dsum);
    }
    CHECK(simplex_forms(1).whitney({0, 1}).str() == "dt1");
}

TEST_CASE("constant diagram retracts onto its level") {
    KoszulFixture k;
    for (int depth = 1; depth <= 2; ++depth) {
        const auto v = constant_diagram(k.alg, k.q, depth);
        CHECK(check_cosimplicial(v, {0, 1, 2}).empty());
        TwModel m(v);
        for (int w = 0; w <= 2; ++w) {
            auto rep = check_retraction(m, w, depth + 1);
            INFO("depth " << depth << " weight " << w);
            for (const auto& f : rep.failures) INFO(f);
            CHECK(rep.ok());
            CHECK(rep.h_tw == k.h(w));
            CHECK(rep.h_tot == k.h(w));
            CHECK(tw_stable(m, w, depth + 1));
        }
    }
    // depth 3 at the weight carrying the unit
    TwModel m3(constant_diagram(k.alg, k.q, 3));
    auto rep = check_retraction(m3, 0, 4);
    CHECK(rep.ok());
    CHECK(rep.h_tw == std::map<int, std::size_t>{{0, 1}});
}

TEST_CASE("without codegeneracies the constant diagram sees a circle") {
    KoszulFixture k;
    auto v = constant_diagram(k.alg, k.q, 1);
    v.codegeneracies.clear();
    TwModel m(v);
    auto rep = check_retraction(m, 1, 2);
    CHECK(rep.ok());
    std::map<int, std::size_t> expected;
    for (const auto& [deg, dim] : k.h(1)) {
        expected[deg] += dim;
        expected[deg + 1] += dim;
    }
    CHECK(rep.h_tw == expected);
}

TEST_CASE("Cech cohomology of O(d) on the projective line") {
    const int window = 5;
    for (int d = -3; d <= 3; ++d) {
        const auto v = cech_line_bundle(d, window);
        CHECK(check_cosimplicial(v, {-1, 0, 1}).empty());
        TwModel m(v);
        std::size_t h0 = 0, h1 = 0, t0 = 0, t1 = 0;
        for (int w = -window; w <= window; ++w) {
            auto rep = check_retraction(m, w, 2);
            INFO("d " << d << " weight " << w);
            for (const auto& f : rep.failures) INFO(f);
            CHECK(rep.ok());
            h0 += rep.h_tw.count(0) ? rep.h_tw.at(0) : 0;
            h1 += rep.h_tw.count(1) ? rep.h_tw.at(1) : 0;
            t0 += rep.h_tot.count(0) ? rep.h_tot.at(0) : 0;
            t1 += rep.h_tot.count(1) ? rep.h_tot.at(1) : 0;
        }
        const auto [o0, o1] = laurent_cech_count(d, window);
        CHECK(h0 == static_cast<std::size_t>(o0));
        CHECK(h1 == static_cast<std::size_t>(o1));
        CHECK(h0 == static_cast<std::size_t>(std::max(0, d + 1)));
        CHECK(h1 == static_cast<std::size_t>(std::max(0, -d - 1)));
        CHECK(t0 == h0);
        CHECK(t1 == h1);
    }
    TwModel m(cech_line_bundle(-2, 2));
    CHECK(check_retraction(m, -1, 2).h_tot == std::map<int, std::size_t>{{1, 1}});
    CHECK(tw_stable(m, -1, 2));
}

TEST_CASE("zero diagram gives a zero TW complex") {
    auto empty = Algebra::make({{"x", 1, false}}, {});
    TwModel m(constant_diagram(empty, std::nullopt, 1));
    auto t = tw(m, -3, 2);
    CHECK(cohomology(t.complex, false).degrees.size() <= 1);
    for (const auto& [deg, s] : t.spaces) CHECK(s.basis.empty());
}

TEST_CASE("products on the equalizer") {
    KoszulFixture k;
    TwModel m(constant_diagram(k.alg, k.q, 2));
    const auto one = m.unit();
    CHECK(m.equalizer_defects(one).empty());
    CHECK(m.differential(one).levels[2][0].is_zero());

    std::mt19937 rng(11);
    auto random_member = [&](const TwSlice& s, int deg) {
        const auto& sp = s.spaces.at(deg);
        Vec c = zero_vec(sp.basis.size());
        for (auto& x : c) x = q(static_cast<long>(rng() % 5) - 2);
        return s.element(m, deg, c);
    };
    const TwSlice s1 = tw(m, 1, 3), s2 = tw(m, 2, 3);
    for (int trial = 0; trial < 6; ++trial)
        for (int da = -1; da <= 1; ++da)
            for (int db = -1; db <= 1; ++db) {
                if (!s1.spaces.count(da) || !s2.spaces.count(db)) continue;
                const TwElement a = random_member(s1, da), b = random_member(s2, db);
                CHECK(m.equalizer_defects(a).empty());
                CHECK(m.equalizer_defects(m.differential(a)).empty());
                const TwElement ab = m.product(a, b);
                CHECK(m.equalizer_defects(ab).empty());
                CHECK(m.equal(m.product(one, a), a));
                const TwElement rhs = m.add(m.product(m.differential(a), b),
                                            m.scaled(m.product(a, m.differential(b)), da % 2 ? -1 : 1));
                CHECK(m.equal(m.differential(ab), rhs));
                // graded commutativity
                CHECK(m.equal(m.product(b, a), m.scaled(ab, (da * db) % 2 ? -1 : 1)));
            }

    // constants on the Cech diagram of O multiply as constants
    TwModel c(cech_line_bundle(0, 2));
    const TwElement three = c.scaled(c.unit(), 3), five = c.scaled(c.unit(), 5);
    CHECK(c.equal(c.product(three, five), c.scaled(c.unit(), 15)));
    CHECK(c.equalizer_defects(three).empty());
}
