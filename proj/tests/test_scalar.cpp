#include "qca/scalar.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qca;

namespace {

Scalar q(int n) { return Scalar::qpow(n); }

// random rational function of q with numerator/denominator degrees <= deg
Scalar randomScalar(std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> dg(0, deg);
    auto poly = [&](bool nonzero) {
        SPoly p;
        int d = dg(rng);
        for (int k = 0; k <= d; ++k) {
            int c = coef(rng);
            if (c == 0) continue;
            Exp x;
            x.e[0] = 4 * k;
            p = p + SPoly::monomial(x, c);
        }
        if (nonzero && p.isZero()) p = SPoly::one();
        return p;
    };
    SPoly num = poly(false);
    SPoly den = poly(true);
    return Scalar(num, den);
}

} // namespace

TEST_CASE("q-integer values") {
    CHECK(qnum(0).isZero());
    CHECK(qnum(1) == Scalar(1));
    // [2]_q = q + q^-1
    CHECK(qnum(2) == q(1) + q(-1));
    // [3]_q = q^2 + 1 + q^-2, from expanding (q^3-q^-3)/(q-q^-1)
    CHECK(qnum(3) == q(2) + Scalar(1) + q(-2));
    CHECK(qnum(-3) == -qnum(3));
}

TEST_CASE("q-integer identity [n](q-q^-1) + q^-n = q^n") {
    Scalar d = q(1) - q(-1);
    for (int n = -20; n <= 20; ++n) {
        CHECK(qnum(n) * d + q(-n) == q(n));
    }
}

TEST_CASE("exp_p coefficients match the displayed series") {
    Scalar p = q(2); // p = q^2
    CHECK(exp_p_coeff(0, p) == Scalar(1));
    CHECK(exp_p_coeff(1, p) == Scalar(1));
    CHECK(exp_p_coeff(2, p) == (Scalar(1) + p).inv());
    Scalar three = (Scalar(1) + p) * (Scalar(1) + p + p * p);
    CHECK(exp_p_coeff(3, p) == three.inv());
    CHECK_THROWS_AS(exp_p_coeff(2, Scalar(-1)), Error);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        Scalar a = randomScalar(rng, 8);
        Scalar b = randomScalar(rng, 8);
        Scalar c = randomScalar(rng, 8);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).isZero());
        if (!a.isZero()) CHECK(a * a.inv() == Scalar(1));
    }
}

TEST_CASE("canonical form: a - a is the unique zero") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Scalar a = randomScalar(rng, 6);
        Scalar z = a - a;
        CHECK(z == Scalar());
        CHECK(z.num().isZero());
        CHECK(z.den().isOne());
    }
}

TEST_CASE("fractions reduce to canonical form") {
    // (1-q^4)/(1-q^2) = 1+q^2
    SPoly one = SPoly::one();
    Exp e2, e4;
    e2.e[0] = 8;
    e4.e[0] = 16;
    Scalar a(one - SPoly::monomial(e4, 1), one - SPoly::monomial(e2, 1));
    CHECK(a == Scalar(1) + q(2));
    // denominators normalize monic with min exponent zero
    Scalar b = q(3) / (q(1) - q(-1));
    Scalar c = q(4) / (q(2) - Scalar(1));
    CHECK(b == c);
}

TEST_CASE("gcd handles the central dimension") {
    // (1 - q^(2+c)) * (1+q^2) over (1 - q^(2+c)) reduces
    Exp ec;
    ec.e[0] = 8;
    ec.e[1] = 4;
    SPoly f = SPoly::one() - SPoly::monomial(ec, 1);
    Scalar a(f * (SPoly::one() + SPoly::monomial(Exp{{8, 0, 0, 0}}, 1)), f);
    CHECK(a == Scalar(1) + q(2));
}

TEST_CASE("rendering") {
    CHECK(qnum(2).str() == "(q^-1 + q)");
    CHECK((q(1) - q(-1)).inv().str() == "(q)/(-1 + q^2)");
    CHECK(Scalar().str() == "0");
}
