#include "qca/prefactor.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qca;

namespace {
Scalar q(int n) { return Scalar::qpow(n); }
} // namespace

TEST_CASE("binomial division, multiplicative") {
    // (z - q w)(z - q^-1 w) expanded, divided back
    Binom b1{0, 1, Shift::q(1)};
    Binom b2{0, 1, Shift::q(-1)};
    MPoly p = binomPoly(b1, Alg::Mult) * binomPoly(b2, Alg::Mult);
    auto d1 = Pref::divByBinom(p, b1, Alg::Mult);
    REQUIRE(d1.has_value());
    CHECK(*d1 == binomPoly(b2, Alg::Mult));
    auto d2 = Pref::divByBinom(*d1, b2, Alg::Mult);
    REQUIRE(d2.has_value());
    CHECK(*d2 == MPoly::one());
    // not divisible
    MPoly z = MPoly::monomial(VarMono::var(0), Scalar(1));
    CHECK(!Pref::divByBinom(z, b1, Alg::Mult).has_value());
}

TEST_CASE("binomial division, additive") {
    Binom b{0, 1, Shift::half(1)}; // u - v - ih/2
    MPoly p = binomPoly(b, Alg::Add) * binomPoly(b, Alg::Add);
    auto d = Pref::divByBinom(p, b, Alg::Add);
    REQUIRE(d.has_value());
    CHECK(*d == binomPoly(b, Alg::Add));
}

TEST_CASE("prefactor addition over a common denominator") {
    // 1/(z-qw) + 1/(z-q^{-1}w) = (2z - (q+q^-1)w) / ((z-qw)(z-q^{-1}w))
    Binom b1{0, 1, Shift::q(1)};
    Binom b2{0, 1, Shift::q(-1)};
    Pref a;
    a.mulDen(DenFactor{b1, Orient::None});
    Pref b;
    b.mulDen(DenFactor{b2, Orient::None});
    Pref s = a.addOver(b, Alg::Mult);
    MPoly expect = MPoly::monomial(VarMono::var(0), Scalar(2)) +
                   MPoly::monomial(VarMono::var(1), -(q(1) + q(-1)));
    CHECK(s.num == expect);
    REQUIRE(s.den.size() == 2);
}

TEST_CASE("prefactor reduce cancels matching factors") {
    Binom b1{0, 1, Shift::q(1)};
    Pref p{binomPoly(b1, Alg::Mult).scaled(q(3))};
    p.mulDen(DenFactor{b1, Orient::None});
    p.reduce(Alg::Mult);
    CHECK(p.den.empty());
    CHECK(p.num == MPoly::fromScalar(q(3)));
}

TEST_CASE("makeLinear canonicalization") {
    // (w q^2 - q^3 z) with w later than z: flips to -(q^3)(z - q^{-1} w)
    LinearValue lv = makeLinear(1, Shift::q(2), 0, Shift{}, Shift::q(3), Alg::Mult);
    REQUIRE(lv.binom.has_value());
    CHECK(lv.binom->x == 0);
    CHECK(lv.binom->y == 1);
    CHECK(lv.binom->s == Shift::q(-1));
    CHECK(lv.unit == -q(3));
    // coincident variables: q^2 z - q^1 z = (q^2 - q) z
    LinearValue lc = makeLinear(0, Shift::q(2), 0, Shift{}, Shift::q(1), Alg::Mult);
    CHECK(lc.var == 0);
    CHECK(lc.unit == q(2) - q(1));
    // and q z - q z vanishes identically
    LinearValue ld = makeLinear(0, Shift::q(1), 0, Shift{}, Shift::q(1), Alg::Mult);
    CHECK(ld.zero);
}
