#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "singinv/errors.hpp"
#include "singinv/moduli.hpp"
#include "singinv/parse.hpp"

#include "test_helpers.hpp"

using namespace singinv;
using namespace testutil;

namespace {

const std::vector<std::string> XYZ = {"x", "y", "z"};
const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> T = {"t"};
const std::vector<std::string> ST = {"s", "t"};

FPoly fam(const char* text, const std::vector<std::string>& params = T) {
    return parse_poly(text, XYZ, params);
}

} // namespace

TEST_CASE("jacobian ideal generators") {
    FPoly f = fam("x^3+y^3+z^3+t*x*y*z");
    IdealPresentation ideal = jacobian_ideal(f);
    CHECK(ideal.generators.size() == 4);
    CHECK(ideal.generators[0] == f);
    CHECK(ideal.generators[1] == fam("3*x^2+t*y*z"));
    CHECK(ideal.generators[2] == fam("3*y^2+t*x*z"));
    CHECK(ideal.generators[3] == fam("3*z^2+t*x*y"));

    FPoly morse = parse_poly("x^2+y^2", XY, {});
    IdealPresentation morse_ideal = jacobian_ideal(morse);
    CHECK(morse_ideal.generators.size() == 3);
    CHECK(morse_ideal.generators[1] == parse_poly("2*x", XY, {}));

    FPoly tp = fam("x^5+s*x^4*y+t*x^3*y^2+y^5+z^2", ST);
    IdealPresentation tp_ideal = jacobian_ideal(tp);
    CHECK(tp_ideal.generators[1] ==
          fam("5*x^4+4*s*x^3*y+3*t*x^2*y^2", ST));
    CHECK(tp_ideal.generators[2] == fam("s*x^4+2*t*x^3*y+5*y^4", ST));
    CHECK(tp_ideal.generators[3] == fam("2*z", ST));
}

TEST_CASE("nonsingular input is rejected") {
    CHECK_THROWS_AS(jacobian_ideal(parse_poly("x+y^2", XY, {})), InputError);
    CHECK_THROWS_AS(jacobian_ideal(parse_poly("1+x^2", XY, {})), InputError);
}

TEST_CASE("rewriting systems match the presented relations") {
    // relations are checked by ideal membership, not by literal rules
    GroebnerReducer e6 =
        GroebnerReducer::compute(jacobian_ideal(fam("x^3+y^3+z^3+t*x*y*z")));
    CHECK(e6.ideal_contains(fam("x^2+(t/3)*y*z")));
    CHECK(e6.ideal_contains(fam("y^2+(t/3)*x*z")));
    CHECK(e6.ideal_contains(fam("z^2+(t/3)*x*y")));
    CHECK(!e6.ideal_contains(fam("x*y*z")));

    GroebnerReducer e7 =
        GroebnerReducer::compute(jacobian_ideal(fam("x^4+t*x^2*y^2+y^4+z^2")));
    CHECK(e7.ideal_contains(fam("x^3+(t/2)*x*y^2")));
    CHECK(e7.ideal_contains(fam("y^3+(t/2)*x^2*y")));
    CHECK(e7.ideal_contains(fam("z")));

    // normal forms are confluent: reducing a reduced form changes nothing
    FPoly nf = e6.normal_form(fam("x^5+x*y*z+y^2"));
    CHECK(e6.normal_form(nf) == nf);
}

TEST_CASE("infinite-dimensional quotients are detected") {
    // d/dx (x^2*y) = 2xy, d/dy = x^2: no pure power of y ever leads
    FPoly f = parse_poly("x^2*y", XY, {});
    GroebnerReducer red = GroebnerReducer::compute(jacobian_ideal(f));
    CHECK_THROWS_AS(QuotientAlgebra::build(std::move(red)), UndefinedError);
}

TEST_CASE("paper families have the expected dimensions") {
    CHECK(moduli_algebra(fam("x^3+y^3+z^3+t*x*y*z")).dim() == 8);
    CHECK(moduli_algebra(fam("x^4+t*x^2*y^2+y^4+z^2")).dim() == 9);
    CHECK(moduli_algebra(fam("x^6+t*x^4*y+y^3+z^2")).dim() == 10);
    CHECK(moduli_algebra(fam("x^5+t*x^3*y^2+y^5+z^2")).dim() == 16);
    CHECK(moduli_algebra(fam("x^5+s*x^4*y+t*x^3*y^2+y^5+z^2", ST)).dim() ==
          16);
}

TEST_CASE("full multiplication tables are associative") {
    for (const char* text :
         {"x^3+y^3+z^3+t*x*y*z", "x^4+t*x^2*y^2+y^4+z^2",
          "x^6+t*x^4*y+y^3+z^2", "x^5+t*x^3*y^2+y^5+z^2"}) {
        QuotientAlgebra A = moduli_algebra(fam(text));
        CHECK_NOTHROW(A.verify_associativity_exhaustive());
    }
    QuotientAlgebra tp =
        moduli_algebra(fam("x^5+s*x^4*y+t*x^3*y^2+y^5+z^2", ST));
    CHECK_NOTHROW(tp.verify_associativity_exhaustive());
}

TEST_CASE("basis-pair products re-reduce to themselves") {
    for (const char* text :
         {"x^3+y^3+z^3+t*x*y*z", "x^4+t*x^2*y^2+y^4+z^2"}) {
        QuotientAlgebra A = moduli_algebra(fam(text));
        const auto& red = A.reducer();
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = i; j < A.dim(); ++j) {
                FPoly prod(A.vars());
                prod.add_term(mono_mul(A.basis()[i], A.basis()[j]),
                              RatFunc(Rational(1)));
                FPoly nf = red.normal_form(prod);
                CHECK(red.normal_form(nf) == nf);
            }
    }
}

TEST_CASE("filtration data") {
    QuotientAlgebra e6 = moduli_algebra(fam("x^3+y^3+z^3+t*x*y*z"));
    FiltrationReport rep = filtration(e6);
    CHECK(rep.socle_degree == 3);
    CHECK(rep.embedding_dim == 3);
    CHECK(rep.power_dims == std::vector<std::size_t>{7, 4, 1});

    QuotientAlgebra e7 = moduli_algebra(fam("x^4+t*x^2*y^2+y^4+z^2"));
    FiltrationReport rep7 = filtration(e7);
    CHECK(rep7.socle_degree == 4);
    CHECK(rep7.embedding_dim == 2);
    CHECK(rep7.power_dims.back() == 1);
}

TEST_CASE("construction rejects a trivial maximal ideal") {
    QuotientAlgebra morse = moduli_algebra(parse_poly("x^2+y^2", XY, {}));
    CHECK(morse.dim() == 1);
    CHECK_THROWS_AS(filtration(morse), UndefinedError);
}

TEST_CASE("construction rejects a socle of dimension above one") {
    // k[x,y]/(x^3, x^2*y, x*y^2, y^3): socle spanned by x^2, x*y, y^2
    IdealPresentation ideal;
    ideal.vars = FPoly::declare_vars(XY);
    for (const char* g : {"x^3", "x^2*y", "x*y^2", "y^3"})
        ideal.generators.push_back(parse_poly(g, XY, {}));
    QuotientAlgebra A =
        QuotientAlgebra::build(GroebnerReducer::compute(ideal));
    CHECK(A.dim() == 6);
    CHECK_THROWS_AS(filtration(A), UndefinedError);
}

TEST_CASE("extracted forms match the references up to scale") {
    {
        QuotientAlgebra A = moduli_algebra(fam("x^3+y^3+z^3+t*x*y*z"));
        HomogeneousForm form = multiplication_tensor(A, filtration(A));
        CHECK(form.proportional_to(HomogeneousForm::parse(
            "t*X^3+t*Y^3+t*Z^3-18*X*Y*Z", {"X", "Y", "Z"}, T)));
    }
    {
        QuotientAlgebra A = moduli_algebra(fam("x^4+t*x^2*y^2+y^4+z^2"));
        HomogeneousForm form = multiplication_tensor(A, filtration(A));
        CHECK(form.proportional_to(HomogeneousForm::parse(
            "t*X^4-12*X^2*Y^2+t*Y^4", {"X", "Y"}, T)));
    }
}

TEST_CASE("scale normalization is deterministic") {
    QuotientAlgebra A = moduli_algebra(fam("x^3+y^3+z^3+t*x*y*z"));
    HomogeneousForm form = multiplication_tensor(A, filtration(A));
    // integer coefficients, joint content 1, first coefficient positive
    CHECK(form.coeff({3, 0, 0}) == RatFunc(parse_ratfunc("t", T)));
    CHECK(form.coeff({1, 1, 1}) == RatFunc(Rational(-18)));
    CHECK(form.scale_normalized() == form);
    HomogeneousForm doubled = form * RatFunc(Rational(-2));
    CHECK(doubled.scale_normalized() == form);
}

TEST_CASE("nilpotency ideal of the flag family") {
    QuotientAlgebra A = moduli_algebra(fam("x^6+t*x^4*y+y^3+z^2"));
    NilpotencySubspace nil = nilpotency_ideal(A, 4);
    CHECK(nil.verified());
    CHECK(nil.basis_indices.size() == 8);
    // complement in the basis is {1, x}
    std::vector<std::string> outside;
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (std::find(nil.basis_indices.begin(), nil.basis_indices.end(), i) ==
            nil.basis_indices.end())
            outside.push_back(A.basis_monomial_str(i));
    CHECK(outside == std::vector<std::string>{"1", "x"});
}

TEST_CASE("high nilpotency power captures the whole maximal ideal") {
    QuotientAlgebra A = moduli_algebra(fam("x^3+y^3+z^3+t*x*y*z"));
    FiltrationReport rep = filtration(A);
    NilpotencySubspace nil = nilpotency_ideal(A, rep.socle_degree + 1);
    CHECK(nil.verified());
    CHECK(nil.basis_indices.size() == A.dim() - 1);
    // the flag construction degenerates to the plain multiplication tensor
    FlagTensor flag = flag_multiplication_tensor(A, nil);
    CHECK(flag.e_index == 0);
    CHECK(flag.top_power == rep.socle_degree);
    CHECK(flag.form.proportional_to(multiplication_tensor(A, rep)));
}

TEST_CASE("square-nilpotent span of the flag family") {
    QuotientAlgebra A = moduli_algebra(fam("x^6+t*x^4*y+y^3+z^2"));
    NilpotencySubspace nil = nilpotency_ideal(A, 2);
    // exhaustive products over the ten-dimensional table
    CHECK(nil.power_check);
    CHECK(nil.ideal_check);
    CHECK(nil.completeness_probe);
    CHECK(nil.basis_indices.size() == 4);
}

TEST_CASE("hidden nilpotent directions are refused, not mis-handled") {
    // after y -> x + y the 4-nilpotent line is no monomial direction; the
    // span heuristic must fail its completeness probe instead of silently
    // using a smaller ideal
    FPoly f = fam("x^6+t*x^4*(x+y)+(x+y)^3+z^2");
    QuotientAlgebra A = moduli_algebra(f);
    NilpotencySubspace nil = nilpotency_ideal(A, 4);
    CHECK(nil.power_check);
    CHECK(nil.ideal_check);
    CHECK(!nil.completeness_probe);
    CHECK_THROWS_AS(flag_multiplication_tensor(A, nil), UndefinedError);
    CHECK_THROWS_AS(run_pipeline(f, recipe_by_name("e8")), UndefinedError);
}

TEST_CASE("flag tensor of the flag family") {
    QuotientAlgebra A = moduli_algebra(fam("x^6+t*x^4*y+y^3+z^2"));
    NilpotencySubspace nil = nilpotency_ideal(A, 4);
    FlagTensor flag = flag_multiplication_tensor(A, nil);
    CHECK(flag.top_power == 3);
    CHECK(flag.e_index == 2);
    CHECK(flag.rep_indices.size() == 2);
    CHECK(A.basis_monomial_str(flag.rep_indices[0]) == "y");
    CHECK(A.basis_monomial_str(flag.rep_indices[1]) == "x^2");
    CHECK(flag.form.proportional_to(HomogeneousForm::parse(
        "t*Y^3-2*t^2*Y^2*X-9*Y*X^2+2*t*X^3", {"Y", "X"}, T)));
}

TEST_CASE("quasi-homogeneous weights") {
    auto w = quasihomogeneous_weights(fam("x^6+t*x^4*y+y^3+z^2"));
    REQUIRE(w.has_value());
    CHECK((*w)[0] == Rational(1, 6));
    CHECK((*w)[1] == Rational(1, 3));
    CHECK((*w)[2] == Rational(1, 2));
    CHECK(!quasihomogeneous_weights(fam("x^3+y^3+z^3+x^2*y^2")).has_value());
}

TEST_CASE("pipeline flags non-quasi-homogeneous input") {
    FPoly f = parse_poly("x^3+x^2*y^2+y^7", XY, {});
    Recipe recipe;
    recipe.kind = PipelineKind::Standard;
    PipelineResult res = run_pipeline(f, recipe);
    CHECK(!res.quasi_homogeneous);
    REQUIRE(!res.notes.empty());
    CHECK(res.notes[0].find("not quasi-homogeneous") != std::string::npos);
}

TEST_CASE("genericity locus of the first family") {
    QuotientAlgebra A = moduli_algebra(fam("x^3+y^3+z^3+t*x*y*z"));
    bool found = false;
    for (const auto& p : A.reducer().genericity())
        if (p == parse_ratfunc("t^3+27", T).num()) found = true;
    CHECK(found);
}

TEST_CASE("specializing the parameter commutes with the pipeline") {
    Recipe recipe = recipe_by_name("sextic");
    PipelineResult generic = run_pipeline(fam("x^5+t*x^3*y^2+y^5+z^2"), recipe);
    // t = 1 avoids the recorded genericity locus
    for (const auto& p : generic.genericity)
        CHECK(p.eval({Rational(1)}) != 0);
    PipelineResult special =
        run_pipeline(parse_poly("x^5+x^3*y^2+y^5+z^2", XYZ, {}), recipe);
    CHECK(generic.invariants[0].second.eval({Rational(1)}) ==
          special.invariants[0].second.constant_value());
    // the extracted forms agree after specializing coefficients
    HomogeneousForm specialized(special.extracted.vars(), 6);
    for (const auto& [m, c] : generic.extracted.coeffs())
        specialized.add_term(m, RatFunc(c.eval({Rational(1)})));
    CHECK(specialized.proportional_to(special.extracted));
}

TEST_CASE("ambient coordinate changes leave the invariants alone") {
    Recipe recipe = recipe_by_name("e7");
    FPoly f = fam("x^4+t*x^2*y^2+y^4+z^2");
    RatFunc baseline = run_pipeline(f, recipe).invariants[0].second;
    // a fixed invertible change mixing all three coordinates
    std::vector<FPoly> images = {fam("x+z"), fam("y-x"), fam("z+y-x")};
    PipelineResult res = run_pipeline(f.substitute(images), recipe);
    CHECK(res.invariants[0].second == baseline);
}

TEST_CASE("unknown recipes are rejected") {
    CHECK_THROWS_AS(recipe_by_name("e9"), InputError);
    Recipe custom = recipe_from_text(
        "pipeline flag 4\nratio j_parabolic_cubic\n");
    CHECK(custom.kind == PipelineKind::Flag);
    CHECK(custom.nil_power == 4);
    CHECK(custom.ratios == std::vector<std::string>{"j_parabolic_cubic"});
    CHECK_THROWS_AS(recipe_from_text("pipeline standard\n"), InputError);
}
