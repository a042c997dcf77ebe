#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "singinv/catalog.hpp"
#include "singinv/errors.hpp"
#include "singinv/parse.hpp"

#include "test_helpers.hpp"

using namespace singinv;
using namespace testutil;

namespace {
const std::vector<std::string> T = {"t"};
const std::vector<std::string> LAM = {"lambda"};
} // namespace

TEST_CASE("builtin catalog loads with the expected entries") {
    const Catalog& cat = Catalog::builtin();
    CHECK(cat.entries().size() == 12);
    CHECK(cat.absolutes().size() == 8);
    // dump/parse round trip preserves the library
    Catalog again = Catalog::parse(cat.dump());
    CHECK(again.entries().size() == cat.entries().size());
    CHECK(again.absolutes().size() == cat.absolutes().size());
}

TEST_CASE("recorded degrees match the programs") {
    const Catalog& cat = Catalog::builtin();
    auto deg = [&](const char* n) {
        const CatalogEntry& e = cat.entry(n);
        return std::array<unsigned, 3>{e.degree_a, e.degree_eps, e.degree_e};
    };
    CHECK(deg("ternary_cubic.J") == std::array<unsigned, 3>{4, 4, 0});
    CHECK(deg("ternary_cubic.K") == std::array<unsigned, 3>{6, 6, 0});
    CHECK(deg("binary_quartic.J") == std::array<unsigned, 3>{2, 4, 0});
    CHECK(deg("binary_quartic.K") == std::array<unsigned, 3>{3, 6, 0});
    CHECK(deg("binary_sextic.J") == std::array<unsigned, 3>{2, 6, 0});
    CHECK(deg("binary_sextic.K") == std::array<unsigned, 3>{4, 12, 0});
    CHECK(deg("binary_sextic.L") == std::array<unsigned, 3>{6, 18, 0});
    CHECK(deg("binary_sextic.M") == std::array<unsigned, 3>{10, 30, 0});
    CHECK(deg("binary_sextic.N") == std::array<unsigned, 3>{15, 45, 0});
    CHECK(deg("binary_cubic.J") == std::array<unsigned, 3>{4, 6, 0});
    CHECK(deg("parabolic_binary_cubic.K") == std::array<unsigned, 3>{1, 0, 3});
    CHECK(deg("parabolic_binary_cubic.L") == std::array<unsigned, 3>{2, 2, 2});
}

TEST_CASE("every SL entry satisfies the divisibility constraint") {
    const Catalog& cat = Catalog::builtin();
    for (const auto& e : cat.entries()) {
        if (e.parabolic()) continue;
        CHECK((e.degree_a * e.N) % e.n == 0);
        CHECK(cat.weight_of(e.name) == e.degree_a * e.N / e.n);
        CHECK(cat.weight_of(e.name) == e.degree_eps);
    }
}

TEST_CASE("weight examples") {
    const Catalog& cat = Catalog::builtin();
    CHECK(cat.weight_of("ternary_cubic.J") == 4);
    CHECK(cat.weight_of("ternary_cubic.K") == 6);
    CHECK(cat.weight_of("binary_quartic.J") == 4);
    CHECK(cat.weight_of("parabolic_binary_cubic.K") == 0);
    CHECK(cat.weight_of("parabolic_binary_cubic.L") == 2);
}

TEST_CASE("mismatched homogeneity is rejected at registration") {
    std::string text = R"(
entry binary_cubic.J shape 2 3
  c[i^j] = a[ipq] eps[jk] eps[pl] eps[qm] a[klm]
  J[] = c[i^j] c[j^i]
end
entry parabolic_binary_cubic.K shape 2 3
  K[] = a[ijk] e[^i] e[^j] e[^k]
end
absolute broken shape 2 3 := J / K
)";
    CHECK_THROWS_AS(Catalog::parse(text), InputError);
}

TEST_CASE("programs referencing unknown covariants are rejected") {
    std::string text = R"(
entry binary_cubic.J shape 2 3
  J[] = q[i^j] q[j^i]
end
)";
    CHECK_THROWS_AS(Catalog::parse(text), InputError);
}

TEST_CASE("shape mismatch is reported") {
    const Catalog& cat = Catalog::builtin();
    HomogeneousForm quartic =
        HomogeneousForm::parse("x^4+y^4", {"x", "y"}, {});
    CHECK_THROWS_AS(cat.evaluate_entry("ternary_cubic.J", quartic),
                    InputError);
    CHECK_THROWS_AS(cat.evaluate_absolute("j_ternary", quartic), InputError);
}

TEST_CASE("degenerate forms yield an undefined result") {
    const Catalog& cat = Catalog::builtin();
    HomogeneousForm cube = HomogeneousForm::parse("x^3", {"x", "y", "z"}, {});
    CHECK_THROWS_AS(cat.evaluate_absolute("j_ternary", cube), UndefinedError);
}

TEST_CASE("reference evaluations") {
    const Catalog& cat = Catalog::builtin();
    HomogeneousForm legendre = HomogeneousForm::parse(
        "z*y^2-x*(x-z)*(x-lambda*z)", {"x", "y", "z"}, LAM);
    CHECK(cat.evaluate_absolute("j_ternary", legendre) ==
          parse_ratfunc("(4/27)*(lambda^2-lambda+1)^3/(lambda^2*(lambda-1)^2)",
                        LAM));

    HomogeneousForm sextic = HomogeneousForm::parse(
        "27*t^4*X^6-1125*t*X^5*Y-675*t^3*X^4*Y^2+6250*X^3*Y^3"
        "+1125*t^2*X^2*Y^4+108*t^4*X*Y^5-125*t*Y^6",
        {"X", "Y"}, T);
    CHECK(cat.evaluate_absolute("j_sextic_moduli", sextic) ==
          parse_ratfunc("78125/(3*(108*t^5+3125))", T));

    // rescaling by -1728 yields the other classical normalization
    HomogeneousForm family = HomogeneousForm::parse("x^3+y^3+z^3+t*x*y*z",
                                                    {"x", "y", "z"}, T);
    CHECK(cat.evaluate_absolute("j_ternary", family) *
              RatFunc(Rational(-1728)) ==
          parse_ratfunc("t^3*(t^3-216)^3/(t^3+27)^3", T));

    HomogeneousForm flag_cubic = HomogeneousForm::parse(
        "t*Y^3-2*t^2*Y^2*X-9*Y*X^2+2*t*X^3", {"Y", "X"}, T);
    CHECK(cat.evaluate_absolute("j_parabolic_cubic", flag_cubic, 2) ==
          parse_ratfunc("4*t^3/(4*t^3+27)", T));
    // with variables in the other order the direction moves to slot 1
    HomogeneousForm flag_swapped = HomogeneousForm::parse(
        "t*Y^3-2*t^2*Y^2*X-9*Y*X^2+2*t*X^3", {"X", "Y"}, T);
    CHECK(cat.evaluate_absolute("j_parabolic_cubic", flag_swapped, 1) ==
          parse_ratfunc("4*t^3/(4*t^3+27)", T));
}

TEST_CASE("binary cubic J is -2/27 times the discriminant") {
    const Catalog& cat = Catalog::builtin();
    Rng rng(71);
    for (int rep = 0; rep < 10; ++rep) {
        long a = rng.range(-4, 4), b = rng.range(-4, 4);
        long c = rng.range(-4, 4), d = rng.range(-4, 4);
        FPoly p(test_vars(2));
        p.add_term({3, 0}, RatFunc(Rational(a)));
        p.add_term({2, 1}, RatFunc(Rational(b)));
        p.add_term({1, 2}, RatFunc(Rational(c)));
        p.add_term({0, 3}, RatFunc(Rational(d)));
        if (p.is_zero()) continue;
        Rational disc = Rational(18) * a * b * c * d - Rational(4) * b * b * b * d +
                        Rational(b) * b * c * c - Rational(4) * a * c * c * c -
                        Rational(27) * a * a * d * d;
        RatFunc j = cat.evaluate_entry("binary_cubic.J",
                                       HomogeneousForm::from_poly(p));
        CHECK(j == RatFunc(Rational(-2, 27) * disc));
    }
}

TEST_CASE("parabolic entries transform by a character") {
    // under x -> alpha*x + beta*y, y -> delta*y the entries pick up
    // alpha^(eps+e) * delta^eps
    const Catalog& cat = Catalog::builtin();
    Rng rng(61);
    for (int rep = 0; rep < 12; ++rep) {
        long alpha = 0, delta = 0, beta = rng.range(-3, 3);
        while (!alpha) alpha = rng.range(-3, 3);
        while (!delta) delta = rng.range(-3, 3);
        FPoly p(test_vars(2));
        for (std::uint32_t k = 0; k <= 3; ++k)
            p.add_term({3 - k, k}, RatFunc(Rational(rng.range(-4, 4))));
        if (p.is_zero()) continue;
        HomogeneousForm f = HomogeneousForm::from_poly(p);
        std::vector<std::vector<RatFunc>> M = {
            {RatFunc(Rational(alpha)), RatFunc(Rational(beta))},
            {RatFunc(), RatFunc(Rational(delta))}};
        HomogeneousForm g = f.linear_substitute(M);
        if (g.is_zero()) continue;
        for (const char* name :
             {"parabolic_binary_cubic.K", "parabolic_binary_cubic.L"}) {
            const CatalogEntry& e = cat.entry(name);
            RatFunc lhs = cat.evaluate_entry(name, g);
            Rational character(1);
            for (unsigned i = 0; i < e.degree_eps + e.degree_e; ++i)
                character *= alpha;
            for (unsigned i = 0; i < e.degree_eps; ++i) character *= delta;
            RatFunc rhs = cat.evaluate_entry(name, f) * RatFunc(character);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("entries scale with their degree under formal rescaling") {
    const Catalog& cat = Catalog::builtin();
    VarsPtr mu_vars = ParamPoly::make_vars({"mu"});
    RatFunc mu = RatFunc::variable(mu_vars, "mu");
    Rng rng(67);
    for (const auto& e : cat.entries()) {
        FPoly p(test_vars(e.n));
        ExpVec mono(e.n, 0);
        mono[0] = e.N;
        p.add_term(mono, RatFunc(Rational(2)));
        for (int extra = 0; extra < 4; ++extra) {
            ExpVec m(e.n, 0);
            std::uint32_t left = e.N;
            for (auto& x : m) {
                x = static_cast<std::uint32_t>(rng.range(0, left));
                left -= x;
            }
            m[e.n - 1] += left;
            p.add_term(m, RatFunc(Rational(rng.range(-3, 3))));
        }
        HomogeneousForm f = HomogeneousForm::from_poly(p);
        RatFunc lhs = cat.evaluate_entry(e.name, f * mu);
        RatFunc rhs = cat.evaluate_entry(e.name, f) * mu.pow(e.degree_a);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("sextic syzygy specializations") {
    const Catalog& cat = Catalog::builtin();
    // the one-parameter family satisfies the relation
    HomogeneousForm family = HomogeneousForm::parse(
        "27*t^4*X^6-1125*t*X^5*Y-675*t^3*X^4*Y^2+6250*X^3*Y^3"
        "+1125*t^2*X^2*Y^4+108*t^4*X*Y^5-125*t*Y^6",
        {"X", "Y"}, T);
    CHECK(sextic_syzygy_holds(cat, family));
    // and at a specialized parameter value
    HomogeneousForm at2 = HomogeneousForm::parse(
        "432*X^6-2250*X^5*Y-5400*X^4*Y^2+6250*X^3*Y^3"
        "+4500*X^2*Y^4+1728*X*Y^5-250*Y^6",
        {"X", "Y"}, {});
    CHECK(sextic_syzygy_holds(cat, at2));
    // a generic sextic does not satisfy it
    HomogeneousForm generic = HomogeneousForm::parse(
        "X^6+X^5*Y+3*X^3*Y^3-2*X*Y^5+Y^6", {"X", "Y"}, {});
    CHECK(!sextic_syzygy_holds(cat, generic));
}

TEST_CASE("relation data exposes the degree-30 monomials") {
    const Catalog& cat = Catalog::builtin();
    HomogeneousForm generic = HomogeneousForm::parse(
        "X^6+X^5*Y+3*X^3*Y^3-2*X*Y^5+Y^6", {"X", "Y"}, {});
    auto data = sextic_relation_data(cat, generic);
    CHECK(data.size() > 10);
    CHECK(data[0].first == "N^2");
    bool found_j15 = false;
    for (const auto& [name, value] : data)
        if (name == "J^15") found_j15 = true;
    CHECK(found_j15);
}

TEST_CASE("catalog text errors") {
    CHECK_THROWS_AS(Catalog::parse("entry x shape 2\n"), InputError);
    CHECK_THROWS_AS(Catalog::parse("stray line\n"), InputError);
    CHECK_THROWS_AS(Catalog::parse("entry a.J shape 2 3\n  J[] = a[ijk]\n"),
                    InputError); // unterminated entry
}
