#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "echelon/poly.hpp"
#include "echelon/poly_parse.hpp"

using namespace echelon;

namespace {

VarTablePtr xy_table() {
    auto t = std::make_shared<VarTable>();
    t->add_pair("x", "y");
    return t;
}

PolyParser<Rat> qparser() { return PolyParser<Rat>(xy_table(), Rat(1)); }

Poly<Rat> qp(const std::string& s) { return qparser().parse_poly(s); }

// Independent expansion oracle: multiply by distributing b's terms over a,
// accumulating with repeated single-term additions only.
template <class K>
Poly<K> expand_oracle(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> acc(a.table());
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) {
            Poly<K> one_term = Poly<K>::monomial(a.table(), ma * mb, ca * cb);
            acc = acc + one_term;
        }
    return acc;
}

template <class K>
Poly<K> random_poly(std::mt19937_64& rng, const VarTablePtr& t, const K& one, int max_deg,
                    int max_terms) {
    Poly<K> p(t);
    int nterms = 1 + static_cast<int>(rng() % max_terms);
    for (int i = 0; i < nterms; ++i) {
        Monomial m(t->size());
        for (int v = 0; v < t->size(); ++v) m.exp(v) = static_cast<int>(rng() % (max_deg + 1));
        long c = static_cast<long>(rng() % 7) - 3;
        p.add_term(m, one.similar(c));
    }
    return p;
}

} // namespace

TEST_CASE("arithmetic matches the spec examples") {
    auto P = qparser();
    CHECK(qp("x+y") + qp("x-y") == qp("2x"));
    CHECK((qp("1+xy") * qp("0")).is_zero());
    // expansion checked against the distributivity oracle, then frozen
    Poly<Rat> prod = qp("1+xy") * qp("1-xy");
    CHECK(prod == expand_oracle(qp("1+xy"), qp("1-xy")));
    CHECK(prod == qp("1 - x^2*y^2"));
}

TEST_CASE("divide_exact on the worked examples") {
    auto P = qparser();
    auto q1 = divide_exact(qp("x^2y + xy^2"), qp("xy"));
    REQUIRE(q1.has_value());
    CHECK(*q1 == qp("x+y"));

    CHECK(!divide_exact(qp("x^2 + y"), qp("x")).has_value());

    auto q3 = divide_exact(qp("xy + x^2y"), qp("xy"));
    REQUIRE(q3.has_value());
    CHECK(*q3 == qp("1+x"));
    // multiply-back oracle
    CHECK(*q3 * qp("xy") == qp("xy + x^2y"));
}

TEST_CASE("divide_exact recovers a factor from a random product") {
    auto t = xy_table();
    std::mt19937_64 rng(20260809);
    for (int i = 0; i < 200; ++i) {
        auto f = random_poly<Rat>(rng, t, Rat(1), 3, 4);
        auto g = random_poly<Rat>(rng, t, Rat(1), 3, 4);
        if (g.is_zero()) continue;
        auto q = divide_exact(f * g, g);
        REQUIRE(q.has_value());
        CHECK(*q == f);
    }
}

TEST_CASE("divide_exact over a prime field") {
    auto t = xy_table();
    Fp one(1, 101);
    PolyParser<Fp> P(t, one);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        auto f = random_poly<Fp>(rng, t, one, 3, 4);
        auto g = random_poly<Fp>(rng, t, one, 3, 4);
        if (g.is_zero()) continue;
        auto q = divide_exact(f * g, g);
        REQUIRE(q.has_value());
        CHECK(*q == f);
    }
    CHECK_THROWS_AS(divide_exact(P.parse_poly("x"), P.parse_poly("0")), DivisionByZero);
}

TEST_CASE("reduce_mod_monomial drops exactly the divisible terms") {
    auto P = qparser();
    Monomial xy = P.parse_monomial("xy");
    CHECK(reduce_mod_monomial(qp("1 + x + xy + x^2y^2"), xy) == qp("1 + x"));
    CHECK(reduce_mod_monomial(qp("xy"), xy).is_zero());
    // expand then drop
    Poly<Rat> sq = qp("1+xy") * qp("1+xy");
    CHECK(reduce_mod_monomial(sq, xy) == qp("1"));
}

TEST_CASE("reduce_mod_monomial is idempotent, linear, multiplicative mod the ideal") {
    auto t = xy_table();
    auto P = qparser();
    Monomial mu = P.parse_monomial("xy");
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        auto f = random_poly<Rat>(rng, t, Rat(1), 3, 5);
        auto g = random_poly<Rat>(rng, t, Rat(1), 3, 5);
        auto rf = reduce_mod_monomial(f, mu);
        CHECK(reduce_mod_monomial(rf, mu) == rf);
        CHECK(reduce_mod_monomial(f + g, mu) ==
              reduce_mod_monomial(rf + reduce_mod_monomial(g, mu), mu));
        CHECK(reduce_mod_monomial(f * g, mu) ==
              reduce_mod_monomial(rf * reduce_mod_monomial(g, mu), mu));
    }
}

TEST_CASE("local units") {
    CHECK(qp("1+x").is_local_unit());
    CHECK(!qp("x+y").is_local_unit());
    CHECK(qp("2-xy").is_local_unit());

    auto t = xy_table();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto f = random_poly<Rat>(rng, t, Rat(1), 2, 4);
        auto g = random_poly<Rat>(rng, t, Rat(1), 2, 4);
        if (f.is_local_unit() && g.is_local_unit()) CHECK((f * g).is_local_unit());
    }
}

TEST_CASE("parser round-trips canonical serialization") {
    auto t = xy_table();
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        auto f = random_poly<Rat>(rng, t, Rat(1), 3, 5);
        CHECK(qparser().parse_poly(f.to_string()) == f);
        CHECK(qparser().parse_poly(f.to_string(/*compact=*/true)) == f);
    }
}

TEST_CASE("parser rejects malformed input with location info") {
    auto P = qparser();
    CHECK_THROWS_AS(P.parse_poly("x^"), ParseError);
    CHECK_THROWS_AS(P.parse_poly("z + 1"), ParseError);
    CHECK_THROWS_AS(P.parse_poly("x2"), ParseError);
    CHECK_THROWS_AS(P.parse_poly("(1+x"), ParseError);
    try {
        P.parse_poly("x^", 12);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 12);
        CHECK(e.column >= 2);
    }
}

TEST_CASE("fraction entries parse and reduce") {
    auto t = xy_table();
    PolyParser<Rat> P(t, Rat(1));
    Frac<Rat> f = P.parse_entry("(x^2y + xy^2)/xy");
    CHECK(f.is_polynomial());
    CHECK(f.as_poly() == qp("x+y"));

    Frac<Rat> g = P.parse_entry("(1+x)/y");
    CHECK(!g.is_polynomial());
    CHECK(!g.in_local_ring());
    CHECK(g.to_string() == "(1+x)/y");

    Frac<Rat> h = P.parse_entry("x*y");
    CHECK(h.is_polynomial());

    // local ring membership: unit denominators are fine, monomials are not
    Frac<Rat> u(qp("x"), qp("1+x"));
    CHECK(u.in_local_ring());
    Frac<Rat> v(qp("x"), qp("xy"));
    CHECK(!v.in_local_ring());
    Frac<Rat> w(qp("x^2y"), qp("xy"));
    CHECK(w.is_polynomial()); // cancels fully
    CHECK(w.as_poly() == qp("x"));
}
