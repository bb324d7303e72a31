#include "doctest.h"

#include "dsi/gca.hpp"
#include "random_elements.hpp"

using namespace dsi;
using testing_support::random_slice_element;
using testing_support::small_rational;

namespace {

AlgebraPtr koszul_plane() {
    return Algebra::make({{"x", 1, false}, {"y", 1, false}}, {{"e1", -1, 1}, {"e2", -1, 1}});
}

Element el(const AlgebraPtr& a, const char* s) { return parse_element(a, s); }

}  // namespace

TEST_CASE("Koszul signs in products") {
    auto a = koszul_plane();
    auto e1 = el(a, "e1"), e2 = el(a, "e2"), x = el(a, "x");
    CHECK(e1 * e2 == -(e2 * e1));
    CHECK((e1 * e1).is_zero());
    CHECK((x + e1) * (x - e1) == x * x);
    CHECK((e2 * e1).str() == "- e1*e2");
}

TEST_CASE("graded commutativity and associativity on random slice elements") {
    auto a = Algebra::make({{"x", 1, false}, {"y", 2, false}},
                           {{"e1", -1, 1}, {"e2", -1, 2}, {"e3", -1, 1}, {"f", 0, 1}, {"g", 2, 1}});
    std::mt19937 rng(7);
    for (int t = 0; t < 80; ++t) {
        const int d1 = -static_cast<int>(rng() % 3), d2 = -static_cast<int>(rng() % 3);
        auto p = random_slice_element(rng, a, 1 + rng() % 3, d1);
        auto q = random_slice_element(rng, a, 1 + rng() % 3, d2);
        auto r = random_slice_element(rng, a, 1 + rng() % 2, 0);
        const bool odd = (d1 * d2) % 2 != 0;
        CHECK(p * q == (odd ? -(q * p) : q * p));
        CHECK((p * q) * r == p * (q * r));
        if (!p.is_zero() && !q.is_zero() && !(p * q).is_zero()) CHECK(*(p * q).weight() == *p.weight() + *q.weight());
    }
}

TEST_CASE("derivations follow the graded Leibniz rule") {
    auto a = koszul_plane();
    // odd coordinate derivative of degree +1
    Derivation de(a, 1);
    de.set("e1", el(a, "1")).set("e2", el(a, "0"));
    CHECK(de.apply(el(a, "x*e1")) == el(a, "x"));

    Derivation q(a, 1);
    q.set("e1", el(a, "x")).set("e2", el(a, "y"));
    CHECK(q.apply(el(a, "e1*e2")) == el(a, "x*e2 - y*e1"));

    // Odd D on e*f with f odd: D(e) f - e D(f)
    Derivation d(a, 1);
    d.set("e1", el(a, "x")).set("e2", el(a, "x*y"));
    CHECK(d.apply(el(a, "e1*e2")) == el(a, "x*e2") - el(a, "e1*x*y"));

    std::mt19937 rng(3);
    auto big = Algebra::make({{"x", 1, false}, {"y", 1, false}}, {{"e1", -1, 1}, {"e2", -1, 1}, {"f", 0, 2}});
    for (int t = 0; t < 60; ++t) {
        const int deg = (t % 2) ? 1 : 0;
        Derivation r(big, deg);
        for (const char* g : {"e1", "e2", "f"}) {
            const int gd = big->slot_degree(*big->slot(g));
            r.set(g, random_slice_element(rng, big, 1 + rng() % 2, gd + deg));
        }
        if (t % 3 == 0) r.set("x", random_slice_element(rng, big, 1, deg));
        auto u = random_slice_element(rng, big, 1 + rng() % 3, -static_cast<int>(rng() % 2));
        auto v = random_slice_element(rng, big, 1 + rng() % 3, -static_cast<int>(rng() % 3));
        if (u.is_zero()) continue;
        const int du = *u.degree();
        Element rhs = r.apply(u) * v;
        Element second = u * r.apply(v);
        rhs += ((deg * du) % 2 != 0) ? -second : second;
        CHECK(r.apply(u * v) == rhs);
    }
}

TEST_CASE("commutator of derivations") {
    auto a = koszul_plane();
    Derivation d1(a, 1);
    d1.set("e1", el(a, "1")).set("e2", el(a, "0"));
    Derivation e1d2(a, 0);
    e1d2.set("e1", el(a, "0")).set("e2", el(a, "e1"));
    Derivation expected(a, 1);
    expected.set("e1", el(a, "0")).set("e2", el(a, "1"));
    CHECK(commutator(d1, e1d2) == expected);

    Derivation q(a, 1);
    q.set("e1", el(a, "x")).set("e2", el(a, "y"));
    auto qq = commutator(q, q);
    CHECK(qq.degree() == 2);
    CHECK(qq.apply(el(a, "e1")).is_zero());
    CHECK(qq.apply(el(a, "e2")).is_zero());
}

TEST_CASE("graded Jacobi for random derivations") {
    auto a = Algebra::make({{"x", 1, false}}, {{"e1", -1, 1}, {"e2", -1, 1}, {"f", 0, 1}});
    std::mt19937 rng(19);
    auto random_der = [&](int deg) {
        Derivation d(a, deg);
        for (const char* g : {"e1", "e2", "f"}) {
            const int gd = a->slot_degree(*a->slot(g));
            d.set(g, random_slice_element(rng, a, static_cast<int>(rng() % 2) + 1, gd + deg) +
                         random_slice_element(rng, a, 0, gd + deg));
        }
        return d;
    };
    for (int t = 0; t < 30; ++t) {
        const int da = t % 2, db = (t / 2) % 2, dc = (t / 4) % 2;
        auto A = random_der(da), B = random_der(db), C = random_der(dc);
        auto lhs = commutator(A, commutator(B, C));
        auto rhs = commutator(commutator(A, B), C);
        auto other = commutator(B, commutator(A, C));
        rhs = rhs + (((da * db) % 2) ? other.scaled(Rational(-1)) : other);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Laurent variables under derivations and algebra maps") {
    auto a = Algebra::make({{"z", 1, true}}, {{"n", 0, 2}});
    Derivation d(a, 0);
    d.set("z", el(a, "z*n")).set("n", el(a, "0"));
    CHECK(d.apply(el(a, "z^-1")) == el(a, "-1 * z^-1*n"));
    CHECK(d.apply(el(a, "z^-2")) == el(a, "-2 * z^-2*n"));

    AlgebraMap flip(a, a);
    flip.set("z", el(a, "2*z^-1")).set("n", el(a, "z*n"));
    auto u = el(a, "z^2 + z^-1*n");
    auto v = el(a, "3/2 * n^2 - z");
    CHECK(flip.apply(u * v) == flip.apply(u) * flip.apply(v));
    CHECK(flip.apply(el(a, "z^-1")) == el(a, "1/2 * z"));
}

TEST_CASE("weight slices") {
    auto plane = Algebra::make({{"x", 1, false}, {"y", 1, false}}, {});
    auto s = slice_monomials(*plane, 2);
    CHECK(s.size() == 1);
    CHECK(s[0].size() == 3);

    auto k = koszul_plane();
    auto s2 = slice_monomials(*k, 2);
    CHECK(s2[-2].size() == 1);
    CHECK(s2[-1].size() == 4);
    CHECK(s2[0].size() == 3);
    CHECK(slice_monomials(*k, 0)[0].size() == 1);

    // brute-force count: monomials x^a y^b e1^c e2^d with a+b+c+d = w
    for (int w = 0; w <= 6; ++w) {
        std::size_t count = 0;
        for (int c = 0; c <= 1; ++c)
            for (int d = 0; d <= 1; ++d)
                if (w - c - d >= 0) count += static_cast<std::size_t>(w - c - d + 1);
        std::size_t total = 0;
        for (const auto& [deg, list] : slice_monomials(*k, w)) total += list.size();
        CHECK(total == count);
    }

    auto zero_weight = Algebra::make({{"u", 0, false}}, {});
    CHECK_THROWS_AS(slice_monomials(*zero_weight, 1), SliceError);
    auto laurent = Algebra::make({{"z", 0, true}}, {});
    CHECK_THROWS_AS(slice_monomials(*laurent, 0), SliceError);
    SliceOptions opt;
    opt.laurent_window["z"] = {-2, 2};
    CHECK(slice_monomials(*laurent, 0, opt)[0].size() == 5);
}

TEST_CASE("operators commute with slicing") {
    auto k = koszul_plane();
    Derivation q(k, 1);
    q.set("e1", el(k, "x")).set("e2", el(k, "y"));
    std::mt19937 rng(5);
    for (int w = 0; w <= 4; ++w) {
        SliceBasis b(w, slice_monomials(*k, w));
        auto c = slice_complex(k, q, b);
        CHECK_FALSE(c.square_defect());
        for (int deg = -2; deg < 0; ++deg) {
            auto e = random_slice_element(rng, k, w, deg);
            Vec lhs = c.d(deg).apply(b.coords(deg, e));
            Vec rhs = b.coords(deg + 1, q.apply(e));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("parse and print round trip") {
    auto a = Algebra::make({{"x", 1, false}, {"y", 1, false}, {"z", 1, true}}, {{"e1", -1, 1}, {"e2", -1, 1}, {"f", 0, 1}});
    auto e = el(a, "3/2 * x^2*e1*e2 - y*e1");
    CHECK(el(a, e.str().c_str()) == e);
    CHECK(el(a, "e2*e1") == el(a, "-e1*e2"));
    CHECK(el(a, "2/4*x") == el(a, "1/2 * x"));
    CHECK(el(a, "0").is_zero());
    std::mt19937 rng(13);
    SliceOptions opt;
    opt.laurent_window["z"] = {-2, 2};
    for (int t = 0; t < 100; ++t) {
        auto r = random_slice_element(rng, a, static_cast<int>(rng() % 4), -static_cast<int>(rng() % 3), opt);
        CHECK(parse_element(a, r.str()) == r);
    }
    try {
        parse_element(a, "x + 2*q");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.column == 7);
    }
    CHECK_THROWS_AS(parse_element(a, "x^-1"), ParseError);
    CHECK_THROWS_AS(parse_element(a, "x y"), ParseError);
    CHECK_THROWS_AS(parse_element(a, "1/0"), ParseError);
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
}
