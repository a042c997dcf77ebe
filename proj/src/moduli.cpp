#include "singinv/moduli.hpp"

#include <algorithm>
#include <sstream>

#include "singinv/errors.hpp"

namespace singinv {

// ---------------------------------------------------------------------------
// Jacobian ideal

IdealPresentation jacobian_ideal(const FPoly& f) {
    if (f.is_zero()) throw InputError("the zero polynomial has no singularity");
    const std::size_t n = f.nvars();
    if (!f.coeff(ExpVec(n, 0)).is_zero())
        throw InputError("the singular point must sit at the origin "
                         "(nonzero constant term)");
    for (std::size_t v = 0; v < n; ++v) {
        ExpVec lin(n, 0);
        lin[v] = 1;
        if (!f.coeff(lin).is_zero())
            throw InputError("f is nonsingular at the origin "
                             "(nonzero linear part)");
    }
    IdealPresentation ideal;
    ideal.vars = f.vars();
    ideal.generators.push_back(f);
    for (std::size_t v = 0; v < n; ++v)
        ideal.generators.push_back(f.derivative(v));
    return ideal;
}

// ---------------------------------------------------------------------------
// Groebner reducer

void GroebnerReducer::record_inversion(const RatFunc& leading) {
    const ParamPoly& num = leading.num();
    if (num.is_constant()) return;
    ParamPoly p = num.primitive_part(true);
    for (const auto& q : genericity_)
        if (q == p) return;
    genericity_.push_back(std::move(p));
}

FPoly GroebnerReducer::reduce_full(FPoly p,
                                   const std::vector<FPoly>& basis) const {
    FPoly remainder(p.vars());
    while (!p.is_zero()) {
        const ExpVec lm = p.leading_monomial();
        const RatFunc lc = p.leading_coeff();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            const ExpVec& gm = g.leading_monomial();
            if (!mono_divides(gm, lm)) continue;
            FPoly t(p.vars());
            t.add_term(mono_div(lm, gm), lc);
            p = p - t * g; // g is monic: no division happens here
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.add_term(lm, lc);
            FPoly t(p.vars());
            t.add_term(lm, lc);
            p = p - t;
        }
    }
    return remainder;
}

GroebnerReducer GroebnerReducer::compute(const IdealPresentation& ideal) {
    GroebnerReducer red;
    red.vars_ = ideal.vars;

    std::vector<FPoly> G;
    for (const auto& gen : ideal.generators) {
        if (gen.is_zero()) continue;
        if (!gen.coeff(ExpVec(gen.nvars(), 0)).is_zero())
            throw InputError("ideal generator has a nonzero constant term");
        red.record_inversion(gen.leading_coeff());
        G.push_back(gen * gen.leading_coeff().inverse());
    }
    if (G.empty()) throw InputError("ideal has no nonzero generators");

    struct CriticalPair {
        std::size_t i, j;
        ExpVec lcm;
    };
    std::vector<CriticalPair> pairs;
    auto add_pairs_for = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i)
            pairs.push_back({i, k,
                             mono_lcm(G[i].leading_monomial(),
                                      G[k].leading_monomial())});
    };
    for (std::size_t k = 1; k < G.size(); ++k) add_pairs_for(k);

    while (!pairs.empty()) {
        // normal selection: smallest lcm degree, graded-lex tie-break
        std::size_t best = 0;
        for (std::size_t p = 1; p < pairs.size(); ++p) {
            if (grlex_greater(pairs[best].lcm, pairs[p].lcm)) best = p;
        }
        CriticalPair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

        const ExpVec& li = G[pr.i].leading_monomial();
        const ExpVec& lj = G[pr.j].leading_monomial();
        if (pr.lcm == mono_mul(li, lj)) continue; // coprime leading terms

        FPoly si(red.vars_), sj(red.vars_);
        si.add_term(mono_div(pr.lcm, li), RatFunc(Rational(1)));
        sj.add_term(mono_div(pr.lcm, lj), RatFunc(Rational(1)));
        FPoly s = si * G[pr.i] - sj * G[pr.j];
        FPoly r = red.reduce_full(std::move(s), G);
        if (r.is_zero()) continue;
        red.record_inversion(r.leading_coeff());
        G.push_back(r * r.leading_coeff().inverse());
        add_pairs_for(G.size() - 1);
    }

    // inter-reduce to the unique reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < G.size(); ++i) {
            FPoly g = G[i];
            G[i] = FPoly(red.vars_);
            FPoly r = red.reduce_full(g, G);
            if (r.is_zero()) {
                G.erase(G.begin() + static_cast<std::ptrdiff_t>(i));
                --i;
                changed = true;
                continue;
            }
            if (!(r == g)) {
                changed = true;
                red.record_inversion(r.leading_coeff());
                r = r * r.leading_coeff().inverse();
            }
            G[i] = std::move(r);
        }
    }
    std::sort(G.begin(), G.end(), [](const FPoly& a, const FPoly& b) {
        return grlex_greater(b.leading_monomial(), a.leading_monomial());
    });
    red.basis_ = std::move(G);
    std::sort(red.genericity_.begin(), red.genericity_.end(),
              [](const ParamPoly& a, const ParamPoly& b) {
                  if (a.degree() != b.degree()) return a.degree() < b.degree();
                  return a.str() < b.str();
              });
    return red;
}

FPoly GroebnerReducer::normal_form(const FPoly& p) const {
    return reduce_full(p, basis_);
}

// ---------------------------------------------------------------------------
// Quotient algebra

QuotientAlgebra QuotientAlgebra::build(GroebnerReducer reducer) {
    QuotientAlgebra A;
    A.reducer_ = std::move(reducer);
    const VarsPtr& vars = A.reducer_.vars();
    const std::size_t n = vars->size();

    // the quotient is finite-dimensional iff every variable has a pure power
    // among the leading terms
    std::vector<std::uint32_t> bound(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t best = 0;
        for (const auto& g : A.reducer_.basis()) {
            const ExpVec& lm = g.leading_monomial();
            bool pure = lm[v] > 0;
            for (std::size_t u = 0; u < n && pure; ++u)
                if (u != v && lm[u]) pure = false;
            if (pure && (best == 0 || lm[v] < best)) best = lm[v];
        }
        if (best == 0)
            throw UndefinedError(
                "non-isolated singularity (at generic parameter): the "
                "quotient algebra is infinite-dimensional");
        bound[v] = best;
    }

    std::vector<ExpVec> standard;
    ExpVec e(n, 0);
    bool more = true;
    while (more) {
        bool divisible = false;
        for (const auto& g : A.reducer_.basis())
            if (mono_divides(g.leading_monomial(), e)) {
                divisible = true;
                break;
            }
        if (!divisible) standard.push_back(e);
        more = false;
        for (std::size_t v = n; v-- > 0;) {
            if (++e[v] < bound[v]) {
                more = true;
                break;
            }
            e[v] = 0;
        }
    }
    std::sort(standard.begin(), standard.end(),
              [](const ExpVec& a, const ExpVec& b) {
                  return grlex_greater(b, a);
              });
    A.basis_ = std::move(standard);
    A.unit_index_ = 0;
    if (A.basis_.empty() || total_degree(A.basis_[0]) != 0)
        throw InternalError("quotient basis lacks the unit");

    const std::size_t dim = A.basis_.size();
    A.table_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        A.table_[i].resize(dim - i);
        for (std::size_t j = i; j < dim; ++j) {
            FPoly prod(vars);
            prod.add_term(mono_mul(A.basis_[i], A.basis_[j]),
                          RatFunc(Rational(1)));
            A.table_[i][j - i] = A.coords_of(A.reducer_.normal_form(prod));
        }
    }
    A.var_images_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        FPoly x(vars);
        ExpVec ev(n, 0);
        ev[v] = 1;
        x.add_term(ev, RatFunc(Rational(1)));
        A.var_images_[v] = A.coords_of(A.reducer_.normal_form(x));
    }
    return A;
}

std::optional<std::size_t> QuotientAlgebra::basis_index(
    const ExpVec& mono) const {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), mono,
                               [](const ExpVec& a, const ExpVec& b) {
                                   return grlex_greater(b, a);
                               });
    if (it != basis_.end() && *it == mono)
        return static_cast<std::size_t>(it - basis_.begin());
    return std::nullopt;
}

Vec QuotientAlgebra::coords_of(const FPoly& nf) const {
    Vec coords(basis_.size());
    for (const auto& [m, c] : nf.terms()) {
        auto idx = basis_index(m);
        if (!idx)
            throw InternalError("normal form contains a non-standard monomial");
        coords[*idx] = c;
    }
    return coords;
}

std::string QuotientAlgebra::basis_monomial_str(std::size_t i) const {
    return mono_str(basis_[i], *vars());
}

const Vec& QuotientAlgebra::var_image(std::size_t ambient_var) const {
    return var_images_.at(ambient_var);
}

const Vec& QuotientAlgebra::product(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return table_[i][j - i];
}

Vec QuotientAlgebra::multiply(const Vec& u, const Vec& v) const {
    Vec acc(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (v[j].is_zero()) continue;
            const Vec& p = product(i, j);
            RatFunc c = u[i] * v[j];
            for (std::size_t k = 0; k < dim(); ++k)
                if (!p[k].is_zero()) acc[k] += c * p[k];
        }
    }
    return acc;
}

Vec QuotientAlgebra::power(Vec v, unsigned k) const {
    Vec acc(dim());
    acc[unit_index_] = RatFunc(Rational(1));
    for (unsigned i = 0; i < k; ++i) acc = multiply(acc, v);
    return acc;
}

namespace {

Vec unit_vec(std::size_t dim, std::size_t at) {
    Vec v(dim);
    v[at] = RatFunc(Rational(1));
    return v;
}

bool vec_equal(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

} // namespace

void QuotientAlgebra::verify_table() const {
    // product of basis monomials is symmetric by construction; associativity
    // on (i, j, g) with g of degree one extends to all triples since every
    // basis monomial is a product of degree-one ones
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < dim(); ++i)
        if (total_degree(basis_[i]) == 1) gens.push_back(i);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            for (std::size_t g : gens) {
                Vec lhs = multiply(product(i, j), unit_vec(dim(), g));
                Vec rhs = multiply(unit_vec(dim(), i), product(j, g));
                if (!vec_equal(lhs, rhs))
                    throw InternalError(
                        "multiplication table violates associativity");
            }
}

void QuotientAlgebra::verify_associativity_exhaustive() const {
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            for (std::size_t k = 0; k < dim(); ++k) {
                Vec lhs = multiply(product(i, j), unit_vec(dim(), k));
                Vec rhs = multiply(unit_vec(dim(), i), product(j, k));
                if (!vec_equal(lhs, rhs))
                    throw InternalError(
                        "multiplication table violates associativity");
            }
}

// ---------------------------------------------------------------------------
// Filtration

FiltrationReport filtration(const QuotientAlgebra& A) {
    const std::size_t dim = A.dim();
    if (dim <= 1)
        throw UndefinedError("construction inapplicable: the maximal ideal "
                             "is zero");
    const std::size_t n = A.vars()->size();

    std::vector<RowSpace> powers;
    RowSpace m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        if (i != A.unit_index()) m.add(unit_vec(dim, i));
    powers.push_back(std::move(m));

    for (;;) {
        const RowSpace& prev = powers.back();
        if (prev.dim() == 0) break;
        RowSpace next(dim);
        for (std::size_t v = 0; v < n; ++v) {
            const Vec& img = A.var_image(v);
            if (vec_is_zero(img)) continue;
            for (const auto& row : prev.rows())
                next.add(A.multiply(img, row));
        }
        if (next.dim() >= prev.dim())
            throw InternalError("ideal filtration fails to descend");
        powers.push_back(std::move(next));
        if (powers.back().dim() == 0) break;
    }

    FiltrationReport rep;
    for (const auto& p : powers)
        if (p.dim() > 0) rep.power_dims.push_back(p.dim());
    rep.socle_degree = static_cast<std::uint32_t>(rep.power_dims.size());
    if (rep.socle_degree < 2)
        throw UndefinedError(
            "construction inapplicable: socle degree below 2");
    if (rep.power_dims.back() != 1)
        throw UndefinedError(
            "socle not one-dimensional - construction inapplicable");
    rep.socle_generator = powers[rep.socle_degree - 1].rows()[0];

    rep.embedding_dim = rep.power_dims[0] - rep.power_dims[1];
    // degree-one standard monomials, in declared variable order
    for (std::size_t v = 0; v < n; ++v) {
        ExpVec ev(n, 0);
        ev[v] = 1;
        if (auto idx = A.basis_index(ev)) rep.degree_one.push_back(*idx);
    }
    if (rep.degree_one.size() != rep.embedding_dim)
        throw UndefinedError("cannot choose a monomial basis of m/m^2 from "
                             "degree-one standard monomials");
    RowSpace check = powers[1];
    for (auto idx : rep.degree_one)
        if (!check.add(unit_vec(dim, idx)))
            throw UndefinedError("degree-one standard monomials are not "
                                 "independent modulo m^2");
    return rep;
}

// ---------------------------------------------------------------------------
// Multiplication tensors

VarsPtr dual_var_names(std::size_t n) {
    static const char* const names[] = {"X", "Y", "Z", "U", "V", "W"};
    if (n == 0 || n > 6)
        throw InputError("extracted forms support 1..6 directions");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(names[i]);
    return FPoly::declare_vars(out);
}

namespace {

// The degree-N form a(v...) = component of the product along the top line,
// for the given coset representatives.
HomogeneousForm subquotient_form(const QuotientAlgebra& A,
                                 const std::vector<Vec>& reps, const Vec& top,
                                 std::uint32_t N) {
    const std::size_t n = reps.size();
    std::size_t pivot = top.size();
    for (std::size_t i = 0; i < top.size(); ++i)
        if (!top[i].is_zero()) {
            pivot = i;
            break;
        }
    if (pivot == top.size())
        throw InternalError("top subspace generator is zero");
    RatFunc pivot_inv = top[pivot].inverse();

    SymmetricTensor tensor(n, N);
    std::vector<std::size_t> ms(N, 0); // non-decreasing index tuple
    for (;;) {
        Vec acc = reps[ms[0]];
        for (std::uint32_t k = 1; k < N; ++k) acc = A.multiply(acc, reps[ms[k]]);
        RatFunc lambda = acc[pivot] * pivot_inv;
        if (!vec_equal(acc, vec_scale(top, lambda)))
            throw InternalError("product escapes the top line");
        tensor.set(ms, lambda);
        // next non-decreasing tuple over {0..n-1}
        std::size_t pos = N;
        while (pos-- > 0)
            if (ms[pos] + 1 < n) break;
        if (pos == static_cast<std::size_t>(-1)) break;
        std::size_t val = ms[pos] + 1;
        for (std::size_t q = pos; q < N; ++q) ms[q] = val;
    }
    return tensor.to_form(dual_var_names(n)).scale_normalized();
}

} // namespace

HomogeneousForm multiplication_tensor(const QuotientAlgebra& A,
                                      const FiltrationReport& report) {
    std::vector<Vec> reps;
    reps.reserve(report.degree_one.size());
    for (auto idx : report.degree_one) reps.push_back(unit_vec(A.dim(), idx));
    return subquotient_form(A, reps, report.socle_generator,
                            report.socle_degree);
}

// ---------------------------------------------------------------------------
// Nilpotency ideal and the flag variation

namespace {

bool rational_is_square(const Rational& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(numerator(q).get_mpz_t()) &&
           mpz_perfect_square_p(denominator(q).get_mpz_t());
}

// Does the polynomial have a root, as a polynomial in __lambda, over the
// field of rational functions in the remaining parameters?  Exact for
// degrees up to two; higher degrees answer "maybe" (treated as a root) so
// the probe stays conservative.
bool line_has_field_root(const ParamPoly& g) {
    auto it =
        std::find(g.vars()->begin(), g.vars()->end(), std::string("__lambda"));
    if (it == g.vars()->end()) return false;
    std::size_t lam = static_cast<std::size_t>(it - g.vars()->begin());
    std::uint32_t deg = g.degree_in(lam);
    if (deg == 0) return false;
    if (deg == 1) return true;
    if (deg > 2) return true; // cannot certify the absence of a root
    // quadratic: a root in the field iff the discriminant is a square
    ParamPoly c0(g.vars()), c1(g.vars()), c2(g.vars());
    for (const auto& [m, coeff] : g.terms()) {
        ExpVec rest = m;
        std::uint32_t e = rest[lam];
        rest[lam] = 0;
        (e == 0 ? c0 : e == 1 ? c1 : c2).add_term(rest, coeff);
    }
    ParamPoly disc = c1 * c1 - c2 * c0 * Rational(4);
    if (disc.is_zero()) return true;
    Rational content = disc.content();
    if (!rational_is_square(content)) return false;
    ParamPoly pp = disc.primitive_part(true);
    return pp.is_constant() || poly_perfect_root(pp, 2).has_value();
}

} // namespace

NilpotencySubspace nilpotency_ideal(const QuotientAlgebra& A, unsigned k) {
    if (k < 2) throw InputError("nilpotency power must be at least 2");
    NilpotencySubspace nil;
    nil.power = k;
    const std::size_t dim = A.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i == A.unit_index()) continue;
        if (vec_is_zero(A.power(unit_vec(dim, i), k)))
            nil.basis_indices.push_back(i);
    }

    // (i) every k-fold product of span elements vanishes: check all
    // multisets of basis elements
    nil.power_check = true;
    const std::size_t m = nil.basis_indices.size();
    if (m > 0) {
        std::vector<std::size_t> ms(k, 0);
        for (;;) {
            Vec acc = unit_vec(dim, nil.basis_indices[ms[0]]);
            for (unsigned q = 1; q < k && !vec_is_zero(acc); ++q)
                acc = A.multiply(acc,
                                 unit_vec(dim, nil.basis_indices[ms[q]]));
            if (!vec_is_zero(acc)) {
                nil.power_check = false;
                break;
            }
            std::size_t pos = k;
            while (pos-- > 0)
                if (ms[pos] + 1 < m) break;
            if (pos == static_cast<std::size_t>(-1)) break;
            std::size_t val = ms[pos] + 1;
            for (std::size_t q = pos; q < k; ++q) ms[q] = val;
        }
    }

    // (ii) closed under multiplication by the coordinate generators
    nil.ideal_check = true;
    for (std::size_t v = 0; v < A.vars()->size() && nil.ideal_check; ++v) {
        const Vec& img = A.var_image(v);
        if (vec_is_zero(img)) continue;
        for (auto idx : nil.basis_indices) {
            Vec prod = A.multiply(img, unit_vec(dim, idx));
            for (std::size_t c = 0; c < dim; ++c) {
                if (prod[c].is_zero()) continue;
                if (std::find(nil.basis_indices.begin(),
                              nil.basis_indices.end(),
                              c) == nil.basis_indices.end()) {
                    nil.ideal_check = false;
                    break;
                }
            }
            if (!nil.ideal_check) break;
        }
    }

    // pairwise line probe: for b outside the span, no line b + lambda*c
    // (c any other basis element) may contain a k-nilpotent direction over
    // the coefficient field, or the span misses part of the nilpotency set
    nil.completeness_probe = true;
    VarsPtr lam_vars = ParamPoly::make_vars({"__lambda"});
    RatFunc lambda = RatFunc::variable(lam_vars, "__lambda");
    auto in_span = [&](std::size_t i) {
        return std::find(nil.basis_indices.begin(), nil.basis_indices.end(),
                         i) != nil.basis_indices.end();
    };
    for (std::size_t b = 0; b < dim && nil.completeness_probe; ++b) {
        if (b == A.unit_index() || in_span(b)) continue;
        for (std::size_t c = 0; c < dim; ++c) {
            if (c == b || c == A.unit_index()) continue;
            Vec u = unit_vec(dim, b);
            u[c] = u[c] + lambda;
            Vec p = A.power(u, k);
            ParamPoly g;
            for (const auto& coeff : p)
                if (!coeff.is_zero()) g = param_gcd(g, coeff.num());
            if (g.is_zero() || line_has_field_root(g)) {
                nil.completeness_probe = false;
                break;
            }
        }
    }
    return nil;
}

FlagTensor flag_multiplication_tensor(const QuotientAlgebra& A,
                                      const NilpotencySubspace& nil) {
    if (!nil.verified())
        throw UndefinedError("nilpotency set is not a verified ideal; "
                             "supply generators explicitly");
    const std::size_t dim = A.dim();
    const std::size_t n = A.vars()->size();

    // m*n and m^2
    RowSpace mn(dim), m2(dim);
    for (std::size_t v = 0; v < n; ++v) {
        const Vec& img = A.var_image(v);
        if (vec_is_zero(img)) continue;
        for (auto idx : nil.basis_indices)
            mn.add(A.multiply(img, unit_vec(dim, idx)));
        for (std::size_t i = 0; i < dim; ++i)
            if (i != A.unit_index())
                m2.add(A.multiply(img, unit_vec(dim, i)));
    }

    // coset representatives from standard monomials, canonical subspace
    // (image of m^2) last
    FlagTensor out;
    RowSpace acc = mn;
    std::vector<std::size_t> canonical;
    for (auto idx : nil.basis_indices)
        if (!m2.contains(unit_vec(dim, idx)) && acc.add(unit_vec(dim, idx)))
            out.rep_indices.push_back(idx);
    for (auto idx : nil.basis_indices)
        if (m2.contains(unit_vec(dim, idx)) && acc.add(unit_vec(dim, idx))) {
            out.rep_indices.push_back(idx);
            canonical.push_back(idx);
        }
    for (auto idx : nil.basis_indices)
        if (!acc.contains(unit_vec(dim, idx)))
            throw UndefinedError("cannot choose coset representatives of "
                                 "n/mn from standard monomials");
    if (canonical.size() > 1)
        throw UndefinedError("canonical subspace m^2/mn is not "
                             "one-dimensional");
    out.e_index = canonical.empty() ? 0 : out.rep_indices.size();

    // powers of the ideal: top must be one-dimensional
    std::vector<RowSpace> powers;
    RowSpace first(dim);
    for (auto idx : nil.basis_indices) first.add(unit_vec(dim, idx));
    powers.push_back(std::move(first));
    for (;;) {
        const RowSpace& prev = powers.back();
        if (prev.dim() == 0) break;
        RowSpace next(dim);
        for (auto idx : nil.basis_indices)
            for (const auto& row : prev.rows())
                next.add(A.multiply(unit_vec(dim, idx), row));
        if (next.dim() >= prev.dim())
            throw InternalError("ideal power filtration fails to descend");
        bool done = next.dim() == 0;
        powers.push_back(std::move(next));
        if (done) break;
    }
    std::size_t top_k = 0;
    for (const auto& p : powers)
        if (p.dim() > 0) ++top_k;
    if (top_k == 0 || powers[top_k - 1].dim() != 1)
        throw UndefinedError("top power of the ideal is not one-dimensional");
    out.top_power = static_cast<std::uint32_t>(top_k);
    const Vec& top = powers[top_k - 1].rows()[0];

    // well-definedness on cosets: m annihilates the top power
    for (std::size_t v = 0; v < n; ++v) {
        const Vec& img = A.var_image(v);
        if (vec_is_zero(img)) continue;
        if (!vec_is_zero(A.multiply(img, top)))
            throw UndefinedError("flag construction ill-defined: m does not "
                                 "annihilate the top power");
    }

    std::vector<Vec> reps;
    reps.reserve(out.rep_indices.size());
    for (auto idx : out.rep_indices) reps.push_back(unit_vec(dim, idx));
    out.form = subquotient_form(A, reps, top, out.top_power);
    return out;
}

// ---------------------------------------------------------------------------
// Quasi-homogeneity

std::optional<std::vector<Rational>> quasihomogeneous_weights(const FPoly& f) {
    if (f.is_zero()) return std::nullopt;
    const std::size_t n = f.nvars();
    // rows: [e_1 .. e_n | 1]
    std::vector<std::vector<Rational>> rows;
    for (const auto& [m, c] : f.terms()) {
        std::vector<Rational> row(n + 1);
        for (std::size_t v = 0; v < n; ++v) row[v] = Rational(m[v]);
        row[n] = Rational(1);
        rows.push_back(std::move(row));
    }
    // Gaussian elimination
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t sel = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        Rational inv = 1 / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational c = rows[r][col];
            for (std::size_t j = 0; j <= n; ++j)
                rows[r][j] -= c * rows[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r][n] != 0) return std::nullopt; // inconsistent
    if (rank < n) return std::nullopt;            // weights not unique
    std::vector<Rational> w(n);
    for (std::size_t r = 0; r < rank; ++r) w[pivot_col[r]] = rows[r][n];
    for (const auto& wi : w)
        if (wi <= 0 || wi > Rational(1, 2)) return std::nullopt;
    return w;
}

// ---------------------------------------------------------------------------
// Recipes and the pipeline

Recipe recipe_by_name(const std::string& name) {
    Recipe r;
    r.name = name;
    if (name == "e6") {
        r.kind = PipelineKind::Standard;
        r.ratios = {"j_ternary_moduli"};
    } else if (name == "e7") {
        r.kind = PipelineKind::Standard;
        r.ratios = {"j_quartic_moduli"};
    } else if (name == "e8") {
        r.kind = PipelineKind::Flag;
        r.nil_power = 4;
        r.ratios = {"j_parabolic_cubic"};
    } else if (name == "sextic") {
        r.kind = PipelineKind::Standard;
        r.ratios = {"j_sextic_moduli"};
    } else if (name == "two-param") {
        r.kind = PipelineKind::Standard;
        r.ratios = {"sextic_pair_1", "sextic_pair_2"};
    } else {
        throw InputError("unknown recipe: " + name);
    }
    return r;
}

Recipe recipe_from_text(const std::string& text) {
    Recipe r;
    r.name = "custom";
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "pipeline") {
            std::string kind;
            ls >> kind;
            if (kind == "standard") {
                r.kind = PipelineKind::Standard;
            } else if (kind == "flag") {
                r.kind = PipelineKind::Flag;
                unsigned k = 0;
                if (ls >> k) r.nil_power = k;
            } else {
                throw InputError("recipe: unknown pipeline kind: " + kind);
            }
        } else if (word == "ratio") {
            std::string name;
            if (!(ls >> name)) throw InputError("recipe: ratio needs a name");
            r.ratios.push_back(name);
        } else {
            throw InputError("recipe: unknown directive: " + word);
        }
    }
    if (r.ratios.empty())
        throw InputError("recipe declares no ratios");
    return r;
}

QuotientAlgebra moduli_algebra(const FPoly& f) {
    return QuotientAlgebra::build(
        GroebnerReducer::compute(jacobian_ideal(f)));
}

PipelineResult run_pipeline(const FPoly& f, const Recipe& recipe,
                            const Catalog& cat) {
    PipelineResult res;
    if (auto w = quasihomogeneous_weights(f)) {
        res.quasi_homogeneous = true;
        res.weights = *w;
        Rational mu(1);
        for (const auto& wi : *w) mu *= 1 / wi - 1;
        res.weight_formula_dim = mu;
    } else {
        res.notes.push_back(
            "input is not quasi-homogeneous: polynomial-quotient semantics; "
            "analytic agreement not guaranteed");
    }

    QuotientAlgebra A = moduli_algebra(f);
    A.verify_table();
    res.dimension = A.dim();
    for (std::size_t i = 0; i < A.dim(); ++i)
        res.basis_monomials.push_back(A.basis_monomial_str(i));
    res.genericity = A.reducer().genericity();

    FiltrationReport rep = filtration(A);
    res.power_dims = rep.power_dims;
    res.socle_degree = rep.socle_degree;
    res.embedding_dim = rep.embedding_dim;

    if (recipe.kind == PipelineKind::Standard) {
        res.extracted = multiplication_tensor(A, rep);
        res.e_index = 0;
    } else {
        NilpotencySubspace nil = nilpotency_ideal(A, recipe.nil_power);
        if (!nil.verified())
            throw UndefinedError("nilpotency set is not a verified ideal; "
                                 "supply generators explicitly");
        FlagTensor flag = flag_multiplication_tensor(A, nil);
        res.extracted = flag.form;
        res.e_index = flag.e_index;
        std::string members;
        for (auto idx : nil.basis_indices) {
            if (!members.empty()) members += ", ";
            members += A.basis_monomial_str(idx);
        }
        res.notes.push_back("nilpotency ideal (power " +
                            std::to_string(nil.power) + ") spanned by: " +
                            members);
    }

    for (const auto& ratio : recipe.ratios) {
        std::size_t e_index = res.e_index ? res.e_index : 1;
        res.invariants.emplace_back(
            ratio, cat.evaluate_absolute(ratio, res.extracted, e_index));
    }
    return res;
}

} // namespace singinv
