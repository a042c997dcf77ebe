#include "singinv/verify.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "singinv/catalog.hpp"
#include "singinv/errors.hpp"
#include "singinv/moduli.hpp"
#include "singinv/parse.hpp"

namespace singinv {

namespace {

// Deterministic generator for the randomized checks.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

struct Checker {
    std::string detail;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            append("FAILED: " + what);
        }
    }
    void note(const std::string& what) { append(what); }
    void append(const std::string& s) {
        if (!detail.empty()) detail += "; ";
        detail += s;
    }
};

const std::vector<std::string> kVars3 = {"x", "y", "z"};
const std::vector<std::string> kVars2 = {"x", "y"};
const std::vector<std::string> kParamT = {"t"};
const std::vector<std::string> kParamST = {"s", "t"};
const std::vector<std::string> kNoParams = {};

HomogeneousForm random_form(Rng& rng, std::size_t n, std::uint32_t N,
                            long lo = -4, long hi = 4) {
    for (;;) {
        FPoly p(dual_var_names(n));
        ExpVec e(n, 0);
        e[0] = N;
        // iterate all degree-N monomials in n variables
        std::function<void(std::size_t, std::uint32_t, ExpVec&)> walk =
            [&](std::size_t v, std::uint32_t left, ExpVec& mono) {
                if (v + 1 == n) {
                    mono[v] = left;
                    long c = rng.range(lo, hi);
                    if (c) p.add_term(mono, RatFunc(Rational(c)));
                    return;
                }
                for (std::uint32_t k = 0; k <= left; ++k) {
                    mono[v] = k;
                    walk(v + 1, left - k, mono);
                }
                mono[v] = 0;
            };
        ExpVec mono(n, 0);
        walk(0, N, mono);
        if (!p.is_zero() && p.is_homogeneous() && p.degree() == N)
            return HomogeneousForm::from_poly(p);
    }
}

std::vector<std::vector<RatFunc>> random_invertible(Rng& rng, std::size_t n,
                                                    Rational& det_out) {
    for (;;) {
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        for (auto& row : m)
            for (auto& x : row) x = Rational(rng.range(-3, 3));
        // determinant by Laplace (n <= 3)
        Rational det;
        if (n == 1) {
            det = m[0][0];
        } else if (n == 2) {
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        } else {
            det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        }
        if (det == 0) continue;
        det_out = det;
        std::vector<std::vector<RatFunc>> out(n, std::vector<RatFunc>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i][j] = RatFunc(m[i][j]);
        return out;
    }
}

// Closure of the span of the given vectors under multiplication by the
// coordinate generators: the smallest ideal containing them.
RowSpace ideal_closure(const QuotientAlgebra& A, std::vector<Vec> seeds) {
    RowSpace span(A.dim());
    for (auto& s : seeds) span.add(std::move(s));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Vec> next;
        for (std::size_t v = 0; v < A.vars()->size(); ++v) {
            const Vec& img = A.var_image(v);
            if (vec_is_zero(img)) continue;
            for (const auto& row : span.rows()) next.push_back(A.multiply(img, row));
        }
        for (auto& r : next)
            if (span.add(std::move(r))) grew = true;
    }
    return span;
}

FPoly family_polynomial(const std::string& which) {
    if (which == "e6")
        return parse_poly("x^3+y^3+z^3+t*x*y*z", kVars3, kParamT);
    if (which == "e7")
        return parse_poly("x^4+t*x^2*y^2+y^4+z^2", kVars3, kParamT);
    if (which == "e8")
        return parse_poly("x^6+t*x^4*y+y^3+z^2", kVars3, kParamT);
    if (which == "sextic")
        return parse_poly("x^5+t*x^3*y^2+y^5+z^2", kVars3, kParamT);
    if (which == "two-param")
        return parse_poly("x^5+s*x^4*y+t*x^3*y^2+y^5+z^2", kVars3, kParamST);
    throw InputError("unknown family: " + which);
}

// --------------------------------------------------------------- checks

CheckResult check_esix(std::uint64_t) {
    Checker c;
    PipelineResult res =
        run_pipeline(family_polynomial("e6"), recipe_by_name("e6"));
    c.require(res.dimension == 8, "algebra dimension is 8");
    HomogeneousForm expected = HomogeneousForm::parse(
        "t*X^3+t*Y^3+t*Z^3-18*X*Y*Z", {"X", "Y", "Z"}, kParamT);
    c.require(res.extracted.proportional_to(expected),
              "extracted cubic is proportional to t*X^3+t*Y^3+t*Z^3-18*X*Y*Z");
    RatFunc want = parse_ratfunc("-(t^3*(t^3-216)^3)/(1728*(t^3+27)^3)",
                                 kParamT);
    c.require(res.invariants.size() == 1 && res.invariants[0].second == want,
              "(J^3-6*K^2)/J^3 equals -(t^3*(t^3-216)^3)/(1728*(t^3+27)^3)");
    return {"", "", c.ok, c.detail};
}

CheckResult check_eseven(std::uint64_t) {
    Checker c;
    PipelineResult res =
        run_pipeline(family_polynomial("e7"), recipe_by_name("e7"));
    c.require(res.dimension == 9, "algebra dimension is 9");
    HomogeneousForm expected = HomogeneousForm::parse(
        "t*X^4-12*X^2*Y^2+t*Y^4", {"X", "Y"}, kParamT);
    c.require(res.extracted.proportional_to(expected),
              "extracted quartic is proportional to t*X^4-12*X^2*Y^2+t*Y^4");
    RatFunc want = parse_ratfunc("(12+t^2)^3/(108*(t^2-4)^2)", kParamT);
    c.require(res.invariants.size() == 1 && res.invariants[0].second == want,
              "J^3/(6*K^2) equals (12+t^2)^3/(108*(t^2-4)^2)");
    return {"", "", c.ok, c.detail};
}

CheckResult check_eeight(std::uint64_t) {
    Checker c;
    FPoly f = family_polynomial("e8");
    QuotientAlgebra A = moduli_algebra(f);
    c.require(A.dim() == 10, "algebra dimension is 10");
    NilpotencySubspace nil = nilpotency_ideal(A, 4);
    c.require(nil.power_check, "every 4-fold product of the span vanishes");
    c.require(nil.ideal_check, "span is closed under the generators");
    c.require(nil.completeness_probe, "no nilpotent line escapes the span");
    c.require(nil.basis_indices.size() == 8, "nilpotency ideal has dimension 8");
    // the span equals the ideal generated by y and x^2
    std::vector<Vec> gens;
    for (const char* g : {"y", "x^2"}) {
        FPoly p = parse_poly(g, kVars3, kParamT);
        Vec coords(A.dim());
        FPoly nf = A.reducer().normal_form(p);
        for (const auto& [m, coeff] : nf.terms()) {
            auto idx = A.basis_index(m);
            if (idx) coords[*idx] = coeff;
        }
        gens.push_back(std::move(coords));
    }
    RowSpace ideal = ideal_closure(A, std::move(gens));
    c.require(ideal.dim() == nil.basis_indices.size(),
              "nilpotency span has the dimension of the ideal (y, x^2)");
    bool same = true;
    for (auto idx : nil.basis_indices) {
        Vec u(A.dim());
        u[idx] = RatFunc(Rational(1));
        if (!ideal.contains(std::move(u))) same = false;
    }
    c.require(same, "nilpotency span equals the ideal (y, x^2)");

    PipelineResult res = run_pipeline(f, recipe_by_name("e8"));
    HomogeneousForm expected = HomogeneousForm::parse(
        "t*Y^3-2*t^2*Y^2*X-9*Y*X^2+2*t*X^3", {"Y", "X"}, kParamT);
    c.require(res.extracted.proportional_to(expected),
              "flag cubic is proportional to t*Y^3-2*t^2*Y^2*X-9*Y*X^2+2*t*X^3");
    c.require(res.e_index == 2, "distinguished direction is the last one");
    RatFunc want = parse_ratfunc("4*t^3/(4*t^3+27)", kParamT);
    c.require(res.invariants.size() == 1 && res.invariants[0].second == want,
              "J*K^2/L^3 equals 4*t^3/(4*t^3+27)");
    return {"", "", c.ok, c.detail};
}

CheckResult check_sextic(std::uint64_t) {
    Checker c;
    FPoly f = family_polynomial("sextic");
    PipelineResult res = run_pipeline(f, recipe_by_name("sextic"));
    c.require(res.dimension == 16, "algebra dimension is 16");
    HomogeneousForm expected = HomogeneousForm::parse(
        "27*t^4*X^6-1125*t*X^5*Y-675*t^3*X^4*Y^2+6250*X^3*Y^3"
        "+1125*t^2*X^2*Y^4+108*t^4*X*Y^5-125*t*Y^6",
        {"X", "Y"}, kParamT);
    c.require(res.extracted.proportional_to(expected),
              "extracted sextic is proportional to the reference sextic");
    RatFunc want = parse_ratfunc("78125/(3*(108*t^5+3125))", kParamT);
    c.require(res.invariants.size() == 1 && res.invariants[0].second == want,
              "J^2/(J^2-2*K) equals 78125/(3*(108*t^5+3125))");
    // the iterated rewriting of x^6 picks up a t^4 factor
    QuotientAlgebra A = moduli_algebra(f);
    FPoly x6 = A.reducer().normal_form(parse_poly("x^6", kVars3, kParamT));
    FPoly x3y3 = A.reducer().normal_form(parse_poly("x^3*y^3", kVars3, kParamT));
    RatFunc coeff = parse_ratfunc("54*t^4/625", kParamT);
    c.require(x6 == x3y3 * coeff,
              "x^6 reduces to (54*t^4/625)*x^3*y^3");
    c.note("in the quotient, x^6 = (54*t^4/625)*x^3*y^3, not (54/625)*x^3*y^3;"
           " the t^4 factor matches the 27*t^4*X^6 term of the sextic");
    return {"", "", c.ok, c.detail};
}

CheckResult check_twoparam(std::uint64_t seed) {
    Checker c;
    FPoly f = family_polynomial("two-param");
    PipelineResult res = run_pipeline(f, recipe_by_name("two-param"));
    c.require(res.dimension == 16, "algebra dimension is 16");
    RatFunc want1 = parse_ratfunc(
        "(3*s*t^2-125)^2/"
        "(256*s^5-1600*s^3*t-27*s^2*t^4+2250*s*t^2+108*t^5+3125)",
        kParamST);
    RatFunc want2 = parse_ratfunc(
        "(163200*s^6*t^2+14800000*s^5-2100000*s^4*t^3+5400*s^3*t^6"
        "-92500000*s^3*t+7425000*s^2*t^4-52650*s*t^7+116250000*s*t^2"
        "+729*t^10-4556250*t^5+312500000)^2/"
        "(256*s^5-1600*s^3*t-27*s^2*t^4+2250*s*t^2+108*t^5+3125)^3",
        kParamST);
    c.require(res.invariants.size() == 2, "two invariants computed");
    c.require(res.invariants.size() == 2 && res.invariants[0].second == want1,
              "(3/5)*J^2/(J^2-2*K) matches the closed form");
    c.require(res.invariants.size() == 2 && res.invariants[1].second == want2,
              "759375*M^2/(J^2-2*K)^5 matches the closed form");
    const Catalog& cat = Catalog::builtin();
    c.require(sextic_syzygy_holds(cat, res.extracted),
              "J^3+3*J*K-10*L vanishes for the family sextic");
    Rng rng(seed + 5);
    bool generic_fails = false;
    for (int tries = 0; tries < 5 && !generic_fails; ++tries) {
        HomogeneousForm g = random_form(rng, 2, 6);
        if (!sextic_syzygy_holds(cat, g)) generic_fails = true;
    }
    c.require(generic_fails,
              "J^3+3*J*K-10*L is nonzero for a generic sextic");
    return {"", "", c.ok, c.detail};
}

CheckResult check_jtheorem(std::uint64_t) {
    Checker c;
    const Catalog& cat = Catalog::builtin();
    const std::vector<std::string> lam = {"lambda"};
    HomogeneousForm legendre = HomogeneousForm::parse(
        "z*y^2-x*(x-z)*(x-lambda*z)", kVars3, lam);
    RatFunc want = parse_ratfunc(
        "(4/27)*(lambda^2-lambda+1)^3/(lambda^2*(lambda-1)^2)", lam);
    c.require(cat.evaluate_absolute("j_ternary", legendre) == want,
              "j on z*y^2-x*(x-z)*(x-lambda*z) gives the lambda formula");

    HomogeneousForm plain = HomogeneousForm::parse(
        "x^3+x^2*y-4*z^3+x*y*z-x*z^2+x*y^2", kVars3, kNoParams);
    c.require(cat.evaluate_absolute("j_ternary", plain) ==
                  parse_ratfunc("357911/120545280", kNoParams),
              "j of the six-term cubic equals 357911/120545280");

    HomogeneousForm orig =
        HomogeneousForm::parse("x^3+y^3+z^3+t*x*y*z", kVars3, kParamT);
    RatFunc esix = parse_ratfunc("-(t^3*(t^3-216)^3)/(1728*(t^3+27)^3)",
                                 kParamT);
    c.require(cat.evaluate_absolute("j_ternary", orig) == esix,
              "j of x^3+y^3+z^3+t*x*y*z matches the closed form");

    HomogeneousForm dual = HomogeneousForm::parse(
        "t*X^3+t*Y^3+t*Z^3-18*X*Y*Z", {"X", "Y", "Z"}, kParamT);
    RatFunc product = cat.evaluate_absolute("j_ternary", orig) *
                      cat.evaluate_absolute("j_ternary", dual);
    c.require(product == RatFunc(Rational(1)),
              "the two cubics have reciprocal j-invariants");
    return {"", "", c.ok, c.detail};
}

CheckResult check_quartic(std::uint64_t) {
    Checker c;
    const Catalog& cat = Catalog::builtin();
    const std::vector<std::string> lam = {"lambda"};
    HomogeneousForm q =
        HomogeneousForm::parse("x*(x-y)*(x-lambda*y)*y", kVars2, lam);
    RatFunc want = parse_ratfunc(
        "(4/27)*(lambda^2-lambda+1)^3/(lambda^2*(lambda-1)^2)", lam);
    c.require(cat.evaluate_absolute("j_quartic", q) == want,
              "4*J^3/(4*J^3-24*K^2) on x*(x-y)*(x-lambda*y)*y gives the "
              "lambda formula");
    return {"", "", c.ok, c.detail};
}

CheckResult check_weight_law(std::uint64_t seed) {
    Checker c;
    const Catalog& cat = Catalog::builtin();
    Rng rng(seed + 8);
    c.require(cat.weight_of("ternary_cubic.J") == 4,
              "ternary cubic J has weight 4");
    for (const auto& entry : cat.entries()) {
        if (entry.parabolic()) continue; // the det law is the SL statement
        unsigned w = cat.weight_of(entry.name);
        for (int rep = 0; rep < 20; ++rep) {
            HomogeneousForm p = random_form(rng, entry.n, entry.N, -3, 3);
            Rational det;
            auto M = random_invertible(rng, entry.n, det);
            RatFunc lhs =
                cat.evaluate_entry(entry.name, p.linear_substitute(M));
            RatFunc rhs = cat.evaluate_entry(entry.name, p) *
                          RatFunc(Rational(det)).pow(w);
            if (!(lhs == rhs)) {
                c.require(false, "weight law for " + entry.name +
                                     " at repetition " + std::to_string(rep));
                break;
            }
        }
    }
    return {"", "", c.ok, c.detail};
}

CheckResult check_theorem1(std::uint64_t seed) {
    Checker c;
    const Catalog& cat = Catalog::builtin();
    Rng rng(seed + 11);

    // ambient coordinate changes do not move the absolute invariants
    FPoly f = family_polynomial("e6");
    Recipe recipe = recipe_by_name("e6");
    RatFunc baseline = run_pipeline(f, recipe).invariants[0].second;
    for (int rep = 0; rep < 10; ++rep) {
        Rational det;
        auto M = random_invertible(rng, 3, det);
        std::vector<FPoly> images;
        for (std::size_t i = 0; i < 3; ++i) {
            FPoly img(f.vars());
            for (std::size_t j = 0; j < 3; ++j) {
                ExpVec e(3, 0);
                e[j] = 1;
                img.add_term(e, M[i][j]);
            }
            images.push_back(std::move(img));
        }
        PipelineResult res = run_pipeline(f.substitute(images), recipe);
        if (!(res.invariants[0].second == baseline)) {
            c.require(false, "ambient change " + std::to_string(rep) +
                                 " moved the invariant");
            break;
        }
    }

    // formal rescaling of the extracted tensor
    VarsPtr mu_vars = ParamPoly::make_vars({"__scale"});
    RatFunc mu = RatFunc::variable(mu_vars, "__scale");
    {
        PipelineResult res = run_pipeline(f, recipe);
        RatFunc scaled = cat.evaluate_absolute("j_ternary_moduli",
                                               res.extracted * mu);
        c.require(scaled == res.invariants[0].second,
                  "formal rescaling leaves the ternary ratio unchanged");
    }
    {
        PipelineResult res =
            run_pipeline(family_polynomial("e8"), recipe_by_name("e8"));
        RatFunc scaled = cat.evaluate_absolute(
            "j_parabolic_cubic", res.extracted * mu, res.e_index);
        c.require(scaled == res.invariants[0].second,
                  "formal rescaling leaves the parabolic ratio unchanged");
    }
    return {"", "", c.ok, c.detail};
}

CheckResult check_substitutions(std::uint64_t) {
    Checker c;
    RatFunc esix = parse_ratfunc("-(t^3*(t^3-216)^3)/(1728*(t^3+27)^3)",
                                 kParamT);
    RatFunc moebius6 = parse_ratfunc("3*(6-t)/(3+t)", kParamT);
    c.require(esix.compose_param("t", moebius6) == esix,
              "t -> 3*(6-t)/(3+t) preserves the first closed form");
    RatFunc eseven = parse_ratfunc("(12+t^2)^3/(108*(t^2-4)^2)", kParamT);
    RatFunc neg = parse_ratfunc("-t", kParamT);
    c.require(eseven.compose_param("t", neg) == eseven,
              "t -> -t preserves the second closed form");
    RatFunc moebius7 = parse_ratfunc("2*(6-t)/(2+t)", kParamT);
    c.require(eseven.compose_param("t", moebius7) == eseven,
              "t -> 2*(6-t)/(2+t) preserves the second closed form");
    return {"", "", c.ok, c.detail};
}

CheckResult check_dimensions(std::uint64_t) {
    Checker c;
    const std::pair<const char*, std::size_t> expected[] = {
        {"e6", 8}, {"e7", 9}, {"e8", 10}, {"sextic", 16}, {"two-param", 16}};
    for (const auto& [name, dim] : expected) {
        FPoly f = family_polynomial(name);
        QuotientAlgebra A = moduli_algebra(f);
        c.require(A.dim() == dim, std::string(name) + " has dimension " +
                                      std::to_string(dim));
        auto w = quasihomogeneous_weights(f);
        c.require(w.has_value(), std::string(name) + " is quasi-homogeneous");
        if (w) {
            Rational mu(1);
            for (const auto& wi : *w) mu *= 1 / wi - 1;
            c.require(mu == Rational(static_cast<long>(dim)),
                      std::string(name) + " weight formula gives " +
                          std::to_string(dim));
        }
    }
    return {"", "", c.ok, c.detail};
}

CheckResult check_scheduler(std::uint64_t seed) {
    Checker c;
    const Catalog& cat = Catalog::builtin();
    Rng rng(seed + 12);
    for (const auto& entry : cat.entries()) {
        for (int rep = 0; rep < 10; ++rep) {
            HomogeneousForm p = random_form(rng, entry.n, entry.N, -3, 3);
            RatFunc staged = cat.evaluate_entry(entry.name, p);
            RatFunc brute = cat.evaluate_entry_bruteforce(entry.name, p);
            if (!(staged == brute)) {
                c.require(false, "scheduler mismatch for " + entry.name +
                                     " at repetition " + std::to_string(rep));
                break;
            }
        }
    }
    return {"", "", c.ok, c.detail};
}

struct CheckDef {
    const char* id;
    const char* title;
    CheckResult (*fn)(std::uint64_t);
};

const CheckDef kChecks[] = {
    {"esix", "tilde-E6 end to end", check_esix},
    {"eseven", "tilde-E7 end to end", check_eseven},
    {"eeight", "tilde-E8 end to end (flag variation)", check_eeight},
    {"sextic", "one-parameter sextic family end to end", check_sextic},
    {"twoparam", "two-parameter family and its syzygy", check_twoparam},
    {"jtheorem", "j-invariant of plane cubics", check_jtheorem},
    {"quartic", "binary quartic j-invariant", check_quartic},
    {"weight-law", "det-weight transformation law", check_weight_law},
    {"theorem1", "basis and scale independence", check_theorem1},
    {"substitutions", "parameter substitution symmetries", check_substitutions},
    {"dimensions", "quotient dimensions match the weight formula",
     check_dimensions},
    {"scheduler", "staged contraction equals brute-force summation",
     check_scheduler},
};

} // namespace

std::vector<std::string> verify_check_ids() {
    std::vector<std::string> ids;
    for (const auto& d : kChecks) ids.emplace_back(d.id);
    return ids;
}

CheckResult run_verify_check(const std::string& id, std::uint64_t seed) {
    for (const auto& d : kChecks) {
        if (id != d.id) continue;
        CheckResult r;
        try {
            r = d.fn(seed);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.id = d.id;
        r.title = d.title;
        return r;
    }
    throw InputError("unknown check: " + id);
}

std::vector<CheckResult> run_verify(std::uint64_t seed,
                                    const std::string& only) {
    std::vector<CheckResult> out;
    for (const auto& d : kChecks) {
        if (!only.empty() && only != d.id) continue;
        out.push_back(run_verify_check(d.id, seed));
    }
    if (out.empty()) throw InputError("unknown check: " + only);
    return out;
}

} // namespace singinv
