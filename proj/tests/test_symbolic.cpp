#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parnf/diffpoly.hpp"
#include "parnf/difffrac.hpp"
#include "parnf/errors.hpp"
#include "parnf/matrix.hpp"

#include <random>

using namespace parnf;

namespace {

std::mt19937 rng(20240811);

Constant rand_constant() {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    return Constant(BigRat(num(rng), den(rng)));
}

RatFun rand_ratfun(int max_deg = 2) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    auto poly = [&] {
        int d = deg(rng);
        std::vector<Constant> c(static_cast<size_t>(d) + 1);
        for (auto& x : c) x = rand_constant();
        return UPoly(c);
    };
    UPoly den = poly();
    while (den.is_zero()) den = poly();
    return RatFun(poly(), den);
}

DiffPoly rand_diffpoly(const std::vector<Var>& vars, int max_terms = 5) {
    std::uniform_int_distribution<int> nterms(1, max_terms), ord(0, 2), ex(1, 2), pick(0, static_cast<int>(vars.size()) - 1),
        nfac(0, 2);
    DiffPoly p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        DiffPoly term{rand_ratfun()};
        int k = nfac(rng);
        for (int i = 0; i < k; ++i)
            term *= DiffPoly::jet(vars[static_cast<size_t>(pick(rng))], ord(rng), ex(rng));
        p += term;
    }
    return p;
}

} // namespace

TEST_CASE("constant field arithmetic in Q(sqrt2)") {
    Constant s = Constant::sqrt2();
    CHECK(s * s == Constant(2));
    Constant x(BigRat(3), BigRat(-2)); // 3 - 2 sqrt2
    CHECK((x * x.inverse()).is_one());
    CHECK(x.sign() == 1); // 3 - 2*1.414... > 0
    CHECK(Constant(BigRat(1), BigRat(-1)).sign() == -1);
    CHECK((Constant(8) * s).str() == "8*sqrt2");
}

TEST_CASE("upoly gcd and roots") {
    UPoly z = UPoly::z();
    UPoly p = (z - UPoly(Constant(2))) * (z - UPoly(Constant(2))) * (z + UPoly(Constant(BigRat(1, 3))));
    auto r = roots_in_constant_field(p);
    REQUIRE(r.complete);
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0].first == Constant(BigRat(-1, 3)));
    CHECK(r.roots[0].second == 1);
    CHECK(r.roots[1].first == Constant(2));
    CHECK(r.roots[1].second == 2);

    // z^2 - 2 has roots +-sqrt2 in C
    UPoly q = z * z - UPoly(Constant(2));
    auto rq = roots_in_constant_field(q);
    REQUIRE(rq.complete);
    REQUIRE(rq.roots.size() == 2);
    CHECK(rq.roots[1].first == Constant::sqrt2());

    // z^2 - 3 has no roots in C but the quadratic is recognized
    UPoly c = z * z - UPoly(Constant(3));
    auto rc = roots_in_constant_field(c);
    CHECK(rc.roots.empty());
    CHECK_FALSE(rc.complete);
}

TEST_CASE("ratfun normalization is idempotent and derivation follows the quotient rule") {
    for (int i = 0; i < 100; ++i) {
        RatFun f = rand_ratfun();
        RatFun renorm(f.num(), f.den());
        CHECK(renorm == f);
        RatFun g = rand_ratfun();
        CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
    }
}

TEST_CASE("ratfun expression grammar") {
    RatFun f = parse_ratfun("(-2)/(9*z^2)");
    CHECK(f == RatFun(UPoly(Constant(BigRat(-2, 9))), UPoly::z() * UPoly::z()));
    CHECK(parse_ratfun("z^2 - 2*z + 1") == parse_ratfun("(z-1)^2"));
    CHECK_THROWS_AS(parse_ratfun("z +"), ParseError);
    CHECK_THROWS_AS(parse_ratfun("(z"), ParseError);
    CHECK_THROWS_AS(parse_ratfun("z ? 1"), ParseError);
}

TEST_CASE("total derivative: generators, Leibniz, golden example") {
    Var v1 = VarPool::intern("v1");
    DiffPoly p = DiffPoly::variable(v1);
    CHECK(p.total_derivative() == DiffPoly::jet(v1, 1));
    DiffPoly sq = p * p;
    CHECK(sq.total_derivative() == DiffPoly(2) * p * DiffPoly::jet(v1, 1));
    // D(v1' + v1^2) = v1'' + 2 v1 v1'
    DiffPoly e = DiffPoly::jet(v1, 1) + sq;
    CHECK(e.total_derivative() == DiffPoly::jet(v1, 2) + DiffPoly(2) * p * DiffPoly::jet(v1, 1));
}

TEST_CASE("derivation is a Leibniz map on random inputs") {
    std::vector<Var> vars = {VarPool::intern("v1"), VarPool::intern("v2")};
    for (int i = 0; i < 50; ++i) {
        DiffPoly p = rand_diffpoly(vars), q = rand_diffpoly(vars);
        CHECK((p * q).total_derivative() == p.total_derivative() * q + p * q.total_derivative());
    }
}

TEST_CASE("substitute_jets examples and commutation with derivation") {
    Var v1 = VarPool::intern("v1");
    Var v2 = VarPool::intern("v2");

    // (v1' + v1^2) at v1 = 2/z -> 2/z^2
    DiffPoly e = DiffPoly::jet(v1, 1) + DiffPoly::variable(v1) * DiffPoly::variable(v1);
    std::map<Var, RatFun> sigma{{v1, parse_ratfun("2/z")}};
    CHECK(e.substitute_jets(sigma) == parse_ratfun("2/z^2"));

    // p = v2 at sigma(v2) = 7 -> 7
    std::map<Var, RatFun> s2{{v2, RatFun(7)}};
    CHECK(DiffPoly::variable(v2).substitute_jets(s2) == RatFun(7));

    CHECK_THROWS_AS(e.substitute_jets(s2), MissingAssignmentError);

    // commutation on random instances; degree-1 images keep the rational
    // arithmetic from dominating the run
    std::vector<Var> vars = {v1, v2};
    for (int i = 0; i < 100; ++i) {
        DiffPoly p = rand_diffpoly(vars);
        std::map<Var, RatFun> sg{{v1, rand_ratfun(1)}, {v2, rand_ratfun(1)}};
        CHECK(p.total_derivative().substitute_jets(sg) == p.substitute_jets(sg).derivative());
    }
}

TEST_CASE("diffpoly parser round-trips the printer") {
    DiffPoly p = parse_diffpoly("v1'' + 2*v1*v1' - (3/2)*v2^2 + z*v1");
    CHECK(parse_diffpoly(p.str()) == p);
    CHECK(parse_diffpoly("v1'*v1'") == parse_diffpoly("v1'^2"));
    CHECK(parse_diffpoly("sqrt2*sqrt2*v1") == parse_diffpoly("2*v1"));
}

TEST_CASE("difffrac field behaviour") {
    DiffPoly v = parse_diffpoly("v1");
    DiffFrac f(DiffPoly(1), v);
    CHECK((f * DiffFrac(v)).is_one());
    CHECK(f.derivative() == DiffFrac(-parse_diffpoly("v1'"), v * v));
}

TEST_CASE("linear algebra over RatFun") {
    Mat<RatFun> m(2, 2);
    m(0, 0) = parse_ratfun("z");
    m(0, 1) = RatFun(1);
    m(1, 0) = RatFun(1);
    m(1, 1) = RatFun(0);
    Mat<RatFun> inv = field_inverse(m, RatFun(1));
    CHECK(m * inv == Mat<RatFun>::identity(2, RatFun(1)));
    CHECK(determinant(m) == RatFun(-1));
}
