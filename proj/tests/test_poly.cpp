#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geodiscover/groebner.hpp"
#include "geodiscover/poly.hpp"

using namespace gd;

namespace {

// Two variables x=0, y=1 with x > y.
const TermOrder kOrder = TermOrder::grevlex(2);

Polynomial X() { return Polynomial::variable(0); }
Polynomial Y() { return Polynomial::variable(1); }
Polynomial C(long n) { return Polynomial::constant(Rat(n)); }

Polynomial random_poly(std::mt19937_64& rng, int vars, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> expd(0, max_deg);
    Polynomial p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        std::vector<Monomial::Entry> es;
        int budget = max_deg;
        for (int v = 0; v < vars; ++v) {
            int e = std::min(expd(rng), budget);
            budget -= e;
            if (e > 0) es.push_back({(std::uint32_t)v, (std::uint32_t)e});
        }
        p.add_term(Monomial(std::move(es)), Rat(coeff(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("monomial arithmetic") {
    Monomial a({{0, 2}, {1, 1}});
    Monomial b({{0, 1}, {1, 3}});
    CHECK(Monomial::lcm(a, b) == Monomial({{0, 2}, {1, 3}}));
    CHECK((a * b) == Monomial({{0, 3}, {1, 4}}));
    CHECK(Monomial({{0, 1}}).divides(a));
    CHECK(!b.divides(a));
    CHECK((a / Monomial({{0, 1}})) == Monomial({{0, 1}, {1, 1}}));
    CHECK(Monomial::coprime(Monomial({{0, 1}}), Monomial({{1, 2}})));
    CHECK(Monomial({{0, 0}}).is_one());
}

TEST_CASE("grevlex order") {
    // deg dominates
    CHECK(kOrder.greater(Monomial({{1, 3}}), Monomial({{0, 2}})));
    // x^2 y > x y^2 in grevlex with x > y
    CHECK(kOrder.greater(Monomial({{0, 2}, {1, 1}}), Monomial({{0, 1}, {1, 2}})));
    // x > y
    CHECK(kOrder.greater(Monomial({{0, 1}}), Monomial({{1, 1}})));
    // 3 vars: classic grevlex example x*z < y^2 (x>y>z)
    TermOrder o3 = TermOrder::grevlex(3);
    CHECK(o3.greater(Monomial({{1, 2}}), Monomial({{0, 1}, {2, 1}})));
}

TEST_CASE("polynomial exact arithmetic distributes") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        Polynomial f = random_poly(rng, 3, 3, 4);
        Polynomial g = random_poly(rng, 3, 3, 4);
        Polynomial h = random_poly(rng, 3, 3, 4);
        CHECK((f + g) * h == f * h + g * h);
    }
}

TEST_CASE("substitution") {
    // (x^2 + y) with x := y + 1  ->  y^2 + 3y + 1
    Polynomial f = X() * X() + Y();
    Polynomial r = f.substituted(0, Y() + C(1));
    CHECK(r == Y() * Y() + C(3) * Y() + C(1));
}

TEST_CASE("normal_form basics") {
    // member reduces to zero
    Polynomial f = X() * X() - Y();
    CHECK(normal_form(f, {f}, kOrder).is_zero());
    // x^2 mod (x - y) = y^2, by long division
    CHECK(normal_form(X() * X(), {X() - Y()}, kOrder) == Y() * Y());
    // constant irreducible by non-constant lead
    CHECK(normal_form(C(1), {X()}, kOrder) == C(1));
}

TEST_CASE("normal_form is idempotent") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        Polynomial f = random_poly(rng, 2, 3, 5);
        Polynomial g1 = random_poly(rng, 2, 2, 3);
        Polynomial g2 = random_poly(rng, 2, 2, 3);
        std::vector<Polynomial> G;
        if (!g1.is_zero()) G.push_back(g1);
        if (!g2.is_zero()) G.push_back(g2);
        if (G.empty()) continue;
        Polynomial r = normal_form(f, G, kOrder);
        CHECK(normal_form(r, G, kOrder) == r);
    }
}

TEST_CASE("s_polynomial") {
    Polynomial f = X() * X() - Y();
    Polynomial g = X() * Y() - C(1);
    // y*f - x*g = x - y^2
    CHECK(s_polynomial(f, g, kOrder) == X() - Y() * Y());
    CHECK(s_polynomial(f, f, kOrder).is_zero());
    // coprime leads cancel fully
    CHECK(s_polynomial(X(), Y(), kOrder).is_zero());
}

TEST_CASE("groebner_basis small cases") {
    Deadline d(std::chrono::milliseconds(5000));
    {
        auto r = groebner_basis({X()}, kOrder, d);
        auto& b = std::get<std::vector<Polynomial>>(r);
        REQUIRE(b.size() == 1);
        CHECK(b[0] == X());
    }
    {
        auto r = groebner_basis({X() + Y(), Y() * Y()}, kOrder, d);
        auto& b = std::get<std::vector<Polynomial>>(r);
        REQUIRE(b.size() == 2);
        CHECK(normal_form(X() + Y(), b, kOrder).is_zero());
        CHECK(normal_form(Y() * Y(), b, kOrder).is_zero());
    }
    {
        auto r = groebner_basis({X() * X() - Y(), X() * Y() - C(1)}, kOrder, d);
        auto& b = std::get<std::vector<Polynomial>>(r);
        REQUIRE(b.size() == 3);
        bool found = false;
        for (auto& p : b)
            if (p == Y() * Y() - X()) found = true;
        CHECK(found);
    }
}

TEST_CASE("groebner invariants on random systems") {
    std::mt19937_64 rng(42);
    Deadline d(std::chrono::milliseconds(60000));
    TermOrder o3 = TermOrder::grevlex(3);
    int completed = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Polynomial> F;
        std::uniform_int_distribution<int> ngen(1, 3);
        int n = ngen(rng);
        for (int i = 0; i < n; ++i) {
            Polynomial p = random_poly(rng, 3, 3, 3);
            if (!p.is_zero()) F.push_back(p);
        }
        if (F.empty()) continue;
        Deadline per(std::chrono::milliseconds(2000));
        auto r = groebner_basis(F, o3, per);
        if (std::holds_alternative<TimedOut>(r)) continue;
        auto& b = std::get<std::vector<Polynomial>>(r);
        ++completed;
        for (auto& f : F) CHECK(normal_form(f, b, o3).is_zero());
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                CHECK(normal_form(s_polynomial(b[i], b[j], o3), b, o3).is_zero());
        // reduced: mutually irreducible leading terms, monic
        for (std::size_t i = 0; i < b.size(); ++i) {
            CHECK(b[i].leading_term(o3).second == Rat(1));
            for (std::size_t j = 0; j < b.size(); ++j)
                if (i != j)
                    CHECK(!b[j].leading_term(o3).first.divides(b[i].leading_term(o3).first));
        }
    }
    CHECK(completed > 150);
}

TEST_CASE("contains_one") {
    Deadline d(std::chrono::milliseconds(5000));
    CHECK(contains_one({X(), X() - C(1)}, kOrder, d) == Ternary::Yes);
    CHECK(contains_one({X() * X() - Y(), X() * Y() - C(1)}, kOrder, d) == Ternary::No);
    CHECK(contains_one({}, kOrder, d) == Ternary::No);
}

TEST_CASE("deadline timeout") {
    // Cyclic-ish system; 0 ms budget must report TimedOut.
    TermOrder o4 = TermOrder::grevlex(4);
    std::vector<Polynomial> F;
    for (int i = 0; i < 4; ++i) {
        Polynomial p;
        for (int j = 0; j < 4; ++j) {
            std::vector<Monomial::Entry> es;
            for (int k = 0; k <= i; ++k) es.push_back({(std::uint32_t)((j + k) % 4), 1});
            p.add_term(Monomial(std::move(es)), Rat(1));
        }
        F.push_back(p);
    }
    Deadline zero(std::chrono::milliseconds(0));
    auto r = groebner_basis(F, o4, zero);
    CHECK(std::holds_alternative<TimedOut>(r));
}
