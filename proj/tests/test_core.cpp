#include "qfan/linprog.hpp"
#include "qfan/matrix.hpp"
#include "qfan/qpoly.hpp"

#include <doctest.h>

using namespace qfan;

TEST_CASE("smith normal form diagonalizes and tracks transforms")
{
    IMat a = {{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    SmithForm s = smith_form(a);
    REQUIRE(s.divisors.size() == 3);
    CHECK(s.divisors[0] == 2);
    CHECK(s.divisors[1] == 2);
    CHECK(s.divisors[2] == 156);
    // d = u a v must hold exactly
    IMat uav = imul(imul(s.u, a), s.v);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(uav[i][j] == s.d[i][j]);
    // divisibility chain
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i)
        CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
}

TEST_CASE("integer kernel is a genuine lattice kernel basis")
{
    IMat a = {{1, 0, -1}, {0, 1, -1}};  // P2 ray matrix
    IMat k = ikernel(a);
    REQUIRE(k.size() == 3);
    REQUIRE(k[0].size() == 1);
    // kernel vector proportional to (1,1,1) and primitive
    CHECK(k[0][0] == k[1][0]);
    CHECK(k[1][0] == k[2][0]);
    CHECK((k[0][0] == 1 || k[0][0] == -1));
}

TEST_CASE("rational solve and inverse")
{
    RMat a = {{Rat(2), Rat(1)}, {Rat(1), Rat(3)}};
    auto inv = rinverse(a);
    REQUIRE(inv.has_value());
    RMat id = rmul(a, *inv);
    CHECK(id[0][0] == 1);
    CHECK(id[0][1] == 0);
    CHECK(id[1][0] == 0);
    CHECK(id[1][1] == 1);

    auto x = rsolve(a, {Rat(3), Rat(4)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
}

TEST_CASE("exact simplex: optimum, infeasible, unbounded")
{
    // min x1 + x2 s.t. x1 + 2 x2 = 4, x >= 0 -> x = (0,2), value 2
    auto res = lp_solve({{Rat(1), Rat(2)}}, {Rat(4)}, {Rat(1), Rat(1)});
    REQUIRE(res.status == LPStatus::Optimal);
    CHECK(res.value == 2);

    // x1 + x2 = -1 with x >= 0 is infeasible
    res = lp_solve({{Rat(1), Rat(1)}}, {Rat(-1)}, {Rat(1), Rat(1)});
    CHECK(res.status == LPStatus::Infeasible);

    // min -x1 with x1 - x2 = 0: unbounded
    res = lp_solve({{Rat(1), Rat(-1)}}, {Rat(0)}, {Rat(-1), Rat(0)});
    CHECK(res.status == LPStatus::Unbounded);
}

TEST_CASE("strict feasibility probe")
{
    // y with y >= 1 and -y >= 1: impossible
    CHECK_FALSE(lp_feasible_ge1({{Rat(1)}, {Rat(-1)}}));
    // two independent directions in the plane: fine
    CHECK(lp_feasible_ge1({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
}

TEST_CASE("cone gauge")
{
    IMat gens = {{1, -1}};  // rays +1, -1 in rank 1
    auto g = cone_gauge(gens, {Int(5)});
    REQUIRE(g.has_value());
    CHECK(*g == 5);
    g = cone_gauge(gens, {Int(-3)});
    REQUIRE(g.has_value());
    CHECK(*g == 3);
}

TEST_CASE("qpoly arithmetic, exp/log, composition")
{
    QPoly x = QPoly::monomial(1, 6, {1});
    QPoly one = QPoly::constant(1, 6, 1);

    QPoly e = x.exp();
    CHECK(e.coeff({0}) == 1);
    CHECK(e.coeff({3}) == Rat(1, 6));
    CHECK((e.log() == x));

    // compositional round trip for kappa = q(1+q)
    QPoly unit = one + x;
    std::vector<QPoly> kappa = {x * unit};
    QPoly target = x;
    // substitute q -> q(1+q) then invert by hand-computed series q - q^2 + 2q^3 - 5q^4 ...
    QPoly composed = target.compose(kappa);
    CHECK(composed.coeff({1}) == 1);
    CHECK(composed.coeff({2}) == 1);
}

TEST_CASE("unipotent matrix inversion over q-series")
{
    QPMat m = qpmat(2, 2, 1, 4);
    m[0][0] = QPoly::constant(1, 4, 1);
    m[1][1] = QPoly::constant(1, 4, 1);
    m[0][1] = QPoly::monomial(1, 4, {1});
    QPMat inv = qp_inverse_unipotent(m);
    QPMat prod = qp_mul(m, inv);
    CHECK(prod[0][0] == QPoly::constant(1, 4, 1));
    CHECK(prod[0][1].is_zero());
    CHECK(prod[1][0].is_zero());
    CHECK(prod[1][1] == QPoly::constant(1, 4, 1));
}
