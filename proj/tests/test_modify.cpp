#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "echelon/generators.hpp"
#include "echelon/maps.hpp"
#include "echelon/poly_parse.hpp"

using namespace echelon;

namespace {

struct Ctx {
    VarTablePtr t;
    PolyParser<Rat> P;

    Ctx() : t(make_table()), P(t, Rat(1)) {}

    static VarTablePtr make_table() {
        auto t = std::make_shared<VarTable>();
        t->add_pair("x", "y");
        return t;
    }

    Monomial m(const std::string& s) const { return P.parse_monomial(s); }
    Frac<Rat> e(const std::string& s) const { return P.parse_entry(s); }
    Poly<Rat> p(const std::string& s) const { return P.parse_poly(s); }

    LatticeBasis<Rat> L(const std::vector<std::vector<std::string>>& cols) const {
        int r = static_cast<int>(cols[0].size());
        Mat<Frac<Rat>> mat(r, static_cast<int>(cols.size()), Frac<Rat>::zero(t, Rat(1)));
        for (size_t j = 0; j < cols.size(); ++j)
            for (int i = 0; i < r; ++i) mat.at(i, static_cast<int>(j)) = e(cols[j][i]);
        return LatticeBasis<Rat>(std::move(mat));
    }

    // R1: r=2, m=1, t=xy, y-part y, E^1 = <e1, xy e2>
    EchelonDatum<Rat> r1(const std::string& ts = "xy", const std::string& ys = "y") const {
        std::vector<LatticeBasis<Rat>> f;
        f.push_back(LatticeBasis<Rat>::standard(2, t, Rat(1)));
        f.push_back(L({{"1", "0"}, {"0", ts}}));
        return EchelonDatum<Rat>{2, DivisorChain(t, {{m(ts), m(ys)}}), std::move(f)};
    }

    // R2: r=3, m=2 scalar steps t=xy, y-part y
    EchelonDatum<Rat> r2() const {
        std::vector<LatticeBasis<Rat>> f;
        f.push_back(LatticeBasis<Rat>::standard(3, t, Rat(1)));
        f.push_back(L({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "xy"}}));
        f.push_back(L({{"1", "0", "0"}, {"0", "xy", "0"}, {"0", "0", "x^2y^2"}}));
        return EchelonDatum<Rat>{3, DivisorChain(t, {{m("xy"), m("y")}, {m("xy"), m("y")}}),
                                 std::move(f)};
    }
};

} // namespace

TEST_CASE("modification of the R1 pattern hits the closed form") {
    Ctx c;
    auto chain = modify(c.r1());
    REQUIRE(chain.stages.size() == 2);
    CHECK(lattice_equal(chain.stages[0], LatticeBasis<Rat>::standard(2, c.t, Rat(1))));
    CHECK(lattice_equal(chain.stages[1], c.L({{"(1)/y", "0"}, {"0", "1"}})));
}

TEST_CASE("modification of the R2 pattern hits both closed-form stages") {
    Ctx c;
    auto chain = modify(c.r2());
    REQUIRE(chain.stages.size() == 3);
    CHECK(lattice_equal(chain.stages[1],
                        c.L({{"(1)/y", "0", "0"}, {"0", "(1)/y", "0"}, {"0", "0", "1"}})));
    CHECK(lattice_equal(chain.stages[2],
                        c.L({{"(1)/y^2", "0", "0"}, {"0", "(1)/y", "0"}, {"0", "0", "1"}})));
}

TEST_CASE("full divisor: D = delta turns the stage into the twisted level") {
    Ctx c;
    auto d = c.r1("xy", "xy");
    auto chain = modify(d);
    auto expected = twist(d.filtration[1], c.m("xy"), TwistDirection::Up);
    CHECK(lattice_equal(chain.stages[1], expected));
}

TEST_CASE("trivial y leaves every stage equal to the ambient") {
    Ctx c;
    // t = x, y-part 1
    std::vector<LatticeBasis<Rat>> f;
    f.push_back(LatticeBasis<Rat>::standard(2, c.t, Rat(1)));
    f.push_back(c.L({{"1", "0"}, {"0", "x"}}));
    EchelonDatum<Rat> d{2, DivisorChain(c.t, {{c.m("x"), c.m("1")}}), f};
    REQUIRE(validate_datum(d).valid);
    auto chain = modify(d);
    CHECK(lattice_equal(chain.stages[1], chain.stages[0]));
}

TEST_CASE("scrambled data modify to the scrambled closed form") {
    GenParams p;
    p.rank = 3;
    p.length = 2;
    p.scramble_count = 3;
    for (std::uint64_t seed = 31; seed <= 36; ++seed) {
        auto d = random_datum<Rat>(seed, p, Rat(1));
        auto chain = modify(d);
        // ascending with certified inclusions of the twisted levels
        for (int i = 1; i <= d.length(); ++i) {
            CHECK(lattice_contains(chain.stages[i], chain.stages[i - 1]));
            auto twisted = twist(d.filtration[i], d.chain.D(i), TwistDirection::Up);
            CHECK(lattice_contains(chain.stages[i], twisted));
        }
    }
}

TEST_CASE("ladder of R2: definitional intersection and the displayed form") {
    Ctx c;
    auto rep = ladder(c.r2(), 7, 12);
    REQUIRE(rep.entries.size() == 1); // only (j, i) = (1, 1)
    const auto& entry = rep.entries.front();
    CHECK(entry.j == 1);
    CHECK(entry.i == 1);
    CHECK(lattice_equal(entry.lattice,
                        c.L({{"(1)/y", "0", "0"}, {"0", "1", "0"}, {"0", "0", "xy"}})));
    CHECK(entry.member_cert);
    CHECK(entry.audit_ok);
    // the paper's displayed adapted form differs: x e2 instead of e2
    REQUIRE(entry.has_displayed_form);
    CHECK(!entry.displayed_form_matches);
    CHECK(rep.any_displayed_mismatch);
    CHECK(lattice_equal(entry.displayed,
                        c.L({{"(1)/y", "0", "0"}, {"0", "x", "0"}, {"0", "0", "xy"}})));
}

TEST_CASE("ladder is empty for length one") {
    Ctx c;
    auto rep = ladder(c.r1());
    CHECK(rep.entries.empty());
}

TEST_CASE("quotient report ranks") {
    Ctx c;
    {
        auto chain = modify(c.r1());
        auto qs = quotient_report(c.r1(), chain);
        REQUIRE(qs.size() == 1);
        CHECK(qs[0].annihilator == c.m("y"));
        CHECK(qs[0].free_rank == 1);
    }
    {
        auto chain = modify(c.r2());
        auto qs = quotient_report(c.r2(), chain);
        REQUIRE(qs.size() == 2);
        CHECK(qs[0].free_rank == 2);
        CHECK(qs[1].free_rank == 1);
        CHECK(qs[0].annihilator == c.m("y"));
    }
    {
        // all-trivial y
        std::vector<LatticeBasis<Rat>> f;
        f.push_back(LatticeBasis<Rat>::standard(2, c.t, Rat(1)));
        f.push_back(c.L({{"1", "0"}, {"0", "x"}}));
        EchelonDatum<Rat> d{2, DivisorChain(c.t, {{c.m("x"), c.m("1")}}), f};
        auto chain = modify(d);
        auto qs = quotient_report(d, chain);
        REQUIRE(qs.size() == 1);
        CHECK(qs[0].free_rank == 0);
    }
}

TEST_CASE("extension of a hypothesis-satisfying map") {
    Ctx c;
    auto d = c.r1();
    auto chain = modify(d);
    MapToLine<Rat> phi{{c.p("y"), c.p("1")}};
    auto out = extend_map(d, chain, phi);
    REQUIRE(out.hypothesis_ok);
    REQUIRE(out.extended.size() == 2);
    // direct evaluation: phi((1/y) e1) = 1, phi(e2) = 1
    CHECK(out.extended[0] == c.p("1"));
    CHECK(out.extended[1] == c.p("1"));
}

TEST_CASE("hypothesis violations report the exact level and witness") {
    Ctx c;
    auto d = c.r1();
    auto chain = modify(d);
    MapToLine<Rat> phi{{c.p("1"), c.p("1")}};
    auto out = extend_map(d, chain, phi);
    CHECK(!out.hypothesis_ok);
    CHECK(out.fail_level == 1);
    CHECK(out.witness_col == 0);
}

TEST_CASE("the zero map always extends") {
    Ctx c;
    auto d = c.r2();
    auto chain = modify(d);
    MapToLine<Rat> zero{{c.p("0"), c.p("0"), c.p("0")}};
    auto out = extend_map(d, chain, zero);
    REQUIRE(out.hypothesis_ok);
    for (auto& v : out.extended) CHECK(v.is_zero());
}

TEST_CASE("maximality probe stays consistent for an honest map") {
    Ctx c;
    auto d = c.r1();
    auto chain = modify(d);
    MapToLine<Rat> phi{{c.p("y"), c.p("1")}};
    // the specific candidate v = e1, mu = y^2: phi((1/y^2) e1) = 1/y is not
    // regular, so the candidate is rejected
    Frac<Rat> val = phi.apply({c.e("(1)/y^2"), c.e("0")});
    CHECK(!val.in_local_ring());

    auto rep = maximality_probe(d, chain, phi, 99, 40);
    CHECK(rep.trials == 40);
    CHECK(rep.enlargements > 0);
    CHECK(rep.consistent());
}

TEST_CASE("maximality probe flags the zero map") {
    Ctx c;
    auto d = c.r1();
    auto chain = modify(d);
    MapToLine<Rat> zero{{c.p("0"), c.p("0")}};
    auto rep = maximality_probe(d, chain, zero, 5, 30);
    CHECK(rep.enlargements > 0);
    // every enlargement extends under the zero map: maximality needs
    // hypotheses beyond the bare statement
    CHECK(!rep.consistent());
    CHECK(static_cast<int>(rep.counterexamples.size()) == rep.enlargements);
}

TEST_CASE("pullback commutes: identity and unit rescaling") {
    Ctx c;
    auto d = c.r1();
    auto id = RingMap<Rat>::identity(c.t, Rat(1));
    CHECK(pullback_commute(d, id).ok);

    RingMap<Rat> scale = id;
    scale.scales = {Rat(2), Rat(3)};
    CHECK(pullback_commute(d, scale).ok);
}

TEST_CASE("pullback commutes: fresh variable adjunction") {
    Ctx c;
    auto d = c.r2();
    auto bigger = std::make_shared<VarTable>();
    bigger->add_pair("x", "y");
    bigger->add_free("w");
    RingMap<Rat> f{c.t, bigger, {0, 1}, {Rat(1), Rat(1)}};
    f.check();
    CHECK(pullback_commute(d, f).ok);
}

TEST_CASE("pullback commutes: pair permutation") {
    auto two = std::make_shared<VarTable>();
    two->add_pair("x1", "y1");
    two->add_pair("x2", "y2");
    VarTablePtr t = two;
    PolyParser<Rat> P(t, Rat(1));

    std::vector<LatticeBasis<Rat>> f;
    f.push_back(LatticeBasis<Rat>::standard(2, t, Rat(1)));
    Mat<Frac<Rat>> e1(2, 2, Frac<Rat>::zero(t, Rat(1)));
    e1.at(0, 0) = P.parse_entry("1");
    e1.at(1, 1) = P.parse_entry("x1*y1");
    f.push_back(LatticeBasis<Rat>(e1));
    EchelonDatum<Rat> d{2, DivisorChain(t, {{P.parse_monomial("x1*y1"), P.parse_monomial("y1")}}),
                        f};
    REQUIRE(validate_datum(d).valid);

    RingMap<Rat> swap{t, t, {2, 3, 0, 1}, {Rat(1), Rat(1), Rat(1), Rat(1)}};
    swap.check();
    CHECK(pullback_commute(d, swap).ok);

    RingMap<Rat> broken{t, t, {1, 0, 2, 3}, {Rat(1), Rat(1), Rat(1), Rat(1)}};
    CHECK_THROWS_AS(broken.check(), MapUnsupported);
}

TEST_CASE("functoriality transport") {
    Ctx c;
    auto d = c.r1();
    Mat<Poly<Rat>> id = Mat<Poly<Rat>>::identity(2, Poly<Rat>::constant(c.t, Rat(1)));
    auto rep0 = functoriality_transport(d, id, 3);
    CHECK(rep0.ok);
    CHECK(rep0.composition_ok);

    Mat<Poly<Rat>> g = elementary_matrix(c.t, Rat(1), 2, 0, 1, c.p("x"));
    auto rep1 = functoriality_transport(d, g, 4);
    CHECK(rep1.ok);
    CHECK(rep1.composition_ok);

    // permutation matrix
    Mat<Poly<Rat>> perm(2, 2, Poly<Rat>::zero(c.t));
    perm.at(0, 1) = c.p("1");
    perm.at(1, 0) = c.p("1");
    auto rep2 = functoriality_transport(d, perm, 5);
    CHECK(rep2.ok);

    Mat<Poly<Rat>> sing(2, 2, Poly<Rat>::zero(c.t));
    sing.at(0, 0) = c.p("x");
    sing.at(1, 1) = c.p("1");
    CHECK_THROWS_AS(functoriality_transport(d, sing, 6), NotUnimodular);
}

TEST_CASE("transport with a non-constant unit determinant") {
    Ctx c;
    auto d = c.r1();
    Mat<Poly<Rat>> g(2, 2, Poly<Rat>::zero(c.t));
    g.at(0, 0) = c.p("1+x");
    g.at(1, 0) = c.p("1");
    g.at(1, 1) = c.p("1");
    REQUIRE(det(g).is_local_unit());
    auto rep = functoriality_transport(d, g, 8);
    CHECK(rep.ok);
}
