#include "singinv/parampoly.hpp"

#include <algorithm>
#include <sstream>

#include "singinv/errors.hpp"

namespace singinv {

std::string mono_str(const ExpVec& e, const VarList& vars) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!first) os << "*";
        os << vars[i];
        if (e[i] > 1) os << "^" << e[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

VarsPtr ParamPoly::make_vars(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    for (std::size_t i = 1; i < names.size(); ++i)
        if (names[i] == names[i - 1])
            throw InputError("duplicate parameter name: " + names[i]);
    return std::make_shared<const VarList>(std::move(names));
}

VarsPtr ParamPoly::no_vars() {
    static const VarsPtr empty = std::make_shared<const VarList>();
    return empty;
}

ParamPoly ParamPoly::constant(VarsPtr vars, const Rational& c) {
    ParamPoly p(std::move(vars));
    if (c != 0) p.terms_.emplace(ExpVec(p.nvars(), 0), c);
    return p;
}

ParamPoly ParamPoly::variable(VarsPtr vars, const std::string& name) {
    ParamPoly p(std::move(vars));
    auto it = std::find(p.vars_->begin(), p.vars_->end(), name);
    if (it == p.vars_->end())
        throw InputError("unknown parameter: " + name);
    ExpVec e(p.nvars(), 0);
    e[static_cast<std::size_t>(it - p.vars_->begin())] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

bool ParamPoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && is_constant_mono(terms_.begin()->first));
}

Rational ParamPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    auto it = terms_.find(ExpVec(nvars(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t ParamPoly::degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

std::uint32_t ParamPoly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

const ExpVec& ParamPoly::leading_monomial() const {
    if (terms_.empty()) throw InternalError("leading term of zero polynomial");
    return terms_.begin()->first;
}

const Rational& ParamPoly::leading_coeff() const {
    if (terms_.empty()) throw InternalError("leading term of zero polynomial");
    return terms_.begin()->second;
}

void ParamPoly::add_term(const ExpVec& mono, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r(vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

VarsPtr union_vars(const VarsPtr& a, const VarsPtr& b) {
    if (a == b || *a == *b) return a;
    VarList merged;
    std::set_union(a->begin(), a->end(), b->begin(), b->end(),
                   std::back_inserter(merged));
    return std::make_shared<const VarList>(std::move(merged));
}

ParamPoly ParamPoly::lifted(const VarsPtr& wider) const {
    if (vars_ == wider || *vars_ == *wider) {
        ParamPoly copy = *this;
        copy.vars_ = wider;
        return copy;
    }
    std::vector<std::size_t> slot(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
        auto it = std::find(wider->begin(), wider->end(), (*vars_)[i]);
        if (it == wider->end())
            throw InternalError("lifted: target variable list is not a superset");
        slot[i] = static_cast<std::size_t>(it - wider->begin());
    }
    ParamPoly r(wider);
    for (const auto& [m, c] : terms_) {
        ExpVec e(wider->size(), 0);
        for (std::size_t i = 0; i < nvars(); ++i) e[slot[i]] = m[i];
        r.terms_.emplace(std::move(e), c);
    }
    return r;
}

void align_vars(ParamPoly& a, ParamPoly& b) {
    if (a.vars() == b.vars() || *a.vars() == *b.vars()) return;
    VarsPtr u = union_vars(a.vars(), b.vars());
    a = a.lifted(u);
    b = b.lifted(u);
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
    ParamPoly a = *this, b = o;
    align_vars(a, b);
    for (const auto& [m, c] : b.terms_) a.add_term(m, c);
    return a;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const {
    ParamPoly a = *this, b = o;
    align_vars(a, b);
    for (const auto& [m, c] : b.terms_) a.add_term(m, -c);
    return a;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
    ParamPoly a = *this, b = o;
    align_vars(a, b);
    ParamPoly r(a.vars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

ParamPoly ParamPoly::operator*(const Rational& c) const {
    ParamPoly r(vars_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

ParamPoly ParamPoly::pow(std::uint32_t k) const {
    ParamPoly result = constant(vars_, Rational(1));
    ParamPoly base = *this;
    while (k) {
        if (k & 1) result = result * base;
        base = (k >>= 1) ? base * base : base;
    }
    return result;
}

bool ParamPoly::operator==(const ParamPoly& o) const {
    if (vars_ == o.vars_ || *vars_ == *o.vars_) return terms_ == o.terms_;
    ParamPoly a = *this, b = o;
    align_vars(a, b);
    return a.terms_ == b.terms_;
}

Rational ParamPoly::eval(const std::vector<Rational>& values) const {
    if (values.size() != nvars())
        throw InputError("evaluation point has wrong arity");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t j = 0; j < m[i]; ++j) t *= values[i];
        acc += t;
    }
    return acc;
}

Rational ParamPoly::content() const {
    if (terms_.empty()) return Rational(0);
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                numerator(c).get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                denominator(c).get_mpz_t());
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    if (sgn(leading_coeff()) < 0) c = -c;
    return c;
}

ParamPoly ParamPoly::primitive_part(bool fix_sign) const {
    if (terms_.empty()) return *this;
    Rational c = content();
    if (!fix_sign && sgn(leading_coeff()) < 0) c = -c;
    ParamPoly r(vars_);
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k / c);
    return r;
}

std::string ParamPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c) < 0 ? "-" : "+");
        }
        if (is_constant_mono(m)) {
            os << rational_str(a);
        } else {
            if (a != 1) os << rational_str(a) << "*";
            os << mono_str(m, *vars_);
        }
    }
    return os.str();
}

std::optional<ParamPoly> try_div_exact(const ParamPoly& a, const ParamPoly& b) {
    if (b.is_zero()) return std::nullopt;
    ParamPoly r = a, d = b;
    align_vars(r, d);
    ParamPoly q(r.vars());
    while (!r.is_zero()) {
        const ExpVec& lr = r.leading_monomial();
        const ExpVec& ld = d.leading_monomial();
        if (!mono_divides(ld, lr)) return std::nullopt;
        ExpVec qm = mono_div(lr, ld);
        Rational qc = r.leading_coeff() / d.leading_coeff();
        q.add_term(qm, qc);
        ParamPoly t(r.vars());
        t.add_term(qm, qc);
        r = r - t * d;
    }
    return q;
}

ParamPoly div_exact(const ParamPoly& a, const ParamPoly& b) {
    auto q = try_div_exact(a, b);
    if (!q) throw InternalError("inexact polynomial division");
    return *q;
}

namespace {

// Univariate view in one variable: exponent -> coefficient polynomial (with
// that variable's exponent zeroed).
std::map<std::uint32_t, ParamPoly> univar_view(const ParamPoly& p,
                                               std::size_t var) {
    std::map<std::uint32_t, ParamPoly> coeffs;
    for (const auto& [m, c] : p.terms()) {
        ExpVec rest = m;
        std::uint32_t k = rest[var];
        rest[var] = 0;
        auto [it, inserted] = coeffs.emplace(k, ParamPoly(p.vars()));
        it->second.add_term(rest, c);
    }
    return coeffs;
}

ParamPoly univar_lc(const ParamPoly& p, std::size_t var) {
    std::uint32_t d = p.degree_in(var);
    ParamPoly lc(p.vars());
    for (const auto& [m, c] : p.terms()) {
        if (m[var] != d) continue;
        ExpVec rest = m;
        rest[var] = 0;
        lc.add_term(rest, c);
    }
    return lc;
}

ParamPoly shift_var(const ParamPoly& p, std::size_t var, std::uint32_t k) {
    ParamPoly r(p.vars());
    for (const auto& [m, c] : p.terms()) {
        ExpVec e = m;
        e[var] += k;
        r.add_term(e, c);
    }
    return r;
}

// Pseudo-remainder of a by b in the given variable: lc(b)^(da-db+1) * a mod b.
ParamPoly pseudo_rem(const ParamPoly& a, const ParamPoly& b, std::size_t var) {
    ParamPoly r = a;
    ParamPoly d = univar_lc(b, var);
    std::uint32_t db = b.degree_in(var);
    std::int64_t e = static_cast<std::int64_t>(a.degree_in(var)) - db + 1;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        ParamPoly lr = univar_lc(r, var);
        std::uint32_t dr = r.degree_in(var);
        r = r * d - shift_var(lr, var, dr - db) * b;
        --e;
    }
    while (e-- > 0) r = r * d;
    return r;
}

// Both arguments integer-coefficient and nonzero.
ParamPoly gcd_rec(const ParamPoly& a, const ParamPoly& b);

// gcd of the univariate-view coefficients.
ParamPoly coeff_gcd(const std::map<std::uint32_t, ParamPoly>& view) {
    ParamPoly g;
    bool first = true;
    for (const auto& [k, c] : view) {
        if (first) {
            g = c;
            first = false;
        } else {
            g = gcd_rec(g, c);
            if (g.is_constant() && !g.is_zero()) break;
        }
    }
    return g;
}

ParamPoly gcd_rec(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero()) return b.primitive_part(true) * abs(b.content());
    if (b.is_zero()) return a.primitive_part(true) * abs(a.content());
    if (a.is_constant() || b.is_constant()) {
        // integer-coefficient inputs: gcd of all coefficients
        Int g = 0;
        for (const auto& [m, c] : a.terms())
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), numerator(c).get_mpz_t());
        for (const auto& [m, c] : b.terms())
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), numerator(c).get_mpz_t());
        return ParamPoly::constant(a.vars(), Rational(g));
    }

    std::size_t var = 0;
    while (a.degree_in(var) == 0 && b.degree_in(var) == 0) ++var;

    auto va = univar_view(a, var);
    auto vb = univar_view(b, var);
    ParamPoly ca = coeff_gcd(va);
    ParamPoly cb = coeff_gcd(vb);
    ParamPoly c = gcd_rec(ca, cb);
    ParamPoly pa = div_exact(a, ca);
    ParamPoly pb = div_exact(b, cb);

    // If one side is free of `var`, its primitive part w.r.t. `var` is a
    // unit, so only the contents contribute.
    if (pa.is_constant() || pb.is_constant()) return c;

    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);

    // Subresultant polynomial remainder sequence.
    ParamPoly g = ParamPoly::constant(a.vars(), Rational(1));
    ParamPoly h = g;
    for (;;) {
        std::uint32_t delta = pa.degree_in(var) - pb.degree_in(var);
        ParamPoly r = pseudo_rem(pa, pb, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) {
            pb = ParamPoly::constant(a.vars(), Rational(1));
            break;
        }
        pa = pb;
        ParamPoly divisor = g * h.pow(delta);
        pb = div_exact(r, divisor);
        g = univar_lc(pa, var);
        if (delta > 0) {
            h = (delta == 1) ? g : div_exact(g.pow(delta), h.pow(delta - 1));
        }
    }
    // Primitive part of the last nonzero remainder w.r.t. `var`.
    auto vlast = univar_view(pb, var);
    ParamPoly cont = coeff_gcd(vlast);
    ParamPoly pp = div_exact(pb, cont);
    return c * pp.primitive_part(true);
}

// Evaluation-based heuristic gcd: substitute a large integer for one
// variable, take the gcd one level down, and read the result back off the
// base-xi digits.  Validated by trial division, so a success is always
// correct; on failure the caller falls back to the subresultant sequence.
// Big-integer gcds scale much better than pseudo-remainder towers once
// intermediate degrees grow past a few dozen.

Int poly_max_norm(const ParamPoly& p) {
    Int m = 0;
    for (const auto& [mono, c] : p.terms()) {
        Int a = abs(numerator(c));
        if (a > m) m = a;
    }
    return m;
}

ParamPoly eval_var_int(const ParamPoly& p, std::size_t var, const Int& xi) {
    std::vector<Int> powers(p.degree_in(var) + 1);
    powers[0] = 1;
    for (std::size_t i = 1; i < powers.size(); ++i)
        powers[i] = powers[i - 1] * xi;
    ParamPoly r(p.vars());
    for (const auto& [m, c] : p.terms()) {
        ExpVec e = m;
        std::uint32_t k = e[var];
        e[var] = 0;
        r.add_term(e, c * Rational(powers[k]));
    }
    return r;
}

Int smod(const Int& v, const Int& xi) {
    Int r = v % xi;
    if (r < 0) r += xi;          // now in [0, xi)
    if (2 * r > xi) r -= xi;     // symmetric range (-xi/2, xi/2]
    return r;
}

std::optional<ParamPoly> gcd_heuristic(const ParamPoly& a, const ParamPoly& b,
                                       int depth) {
    if (depth > 8) return std::nullopt;
    if (a.is_constant() || b.is_constant()) return gcd_rec(a, b);

    std::size_t var = 0;
    while (a.degree_in(var) == 0 && b.degree_in(var) == 0) ++var;
    std::uint32_t max_deg = std::max(a.degree_in(var), b.degree_in(var));

    Int na = poly_max_norm(a), nb = poly_max_norm(b);
    Int xi = 2 * (na < nb ? na : nb) + 2;
    if (xi < 16) xi = 16;

    for (int attempt = 0; attempt < 6; ++attempt) {
        // keep the substituted integers within reason
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * (max_deg + 1) > 4000000)
            return std::nullopt;
        ParamPoly A = eval_var_int(a, var, xi);
        ParamPoly B = eval_var_int(b, var, xi);
        if (!A.is_zero() && !B.is_zero()) {
            std::optional<ParamPoly> gamma;
            if (A.is_constant() && B.is_constant()) {
                Int g;
                mpz_gcd(g.get_mpz_t(), numerator(A.constant_value()).get_mpz_t(),
                        numerator(B.constant_value()).get_mpz_t());
                gamma = ParamPoly::constant(a.vars(), Rational(g));
            } else {
                gamma = gcd_heuristic(A, B, depth + 1);
            }
            if (gamma && !gamma->is_zero()) {
                // base-xi digit expansion along `var`; gamma keeps its full
                // content, the digits encode the var-dependence
                ParamPoly g(a.vars());
                ParamPoly rem = *gamma;
                bool ok = true;
                for (std::uint32_t i = 0; i <= max_deg && ok; ++i) {
                    if (rem.is_zero()) break;
                    ParamPoly digit(a.vars());
                    ParamPoly next(a.vars());
                    for (const auto& [m, c] : rem.terms()) {
                        if (!is_integer(c)) {
                            ok = false;
                            break;
                        }
                        Int d = smod(numerator(c), xi);
                        if (d != 0) {
                            ExpVec e = m;
                            e[var] = i;
                            digit.add_term(e, Rational(d));
                        }
                        Int q = (numerator(c) - d) / xi;
                        if (q != 0) next.add_term(m, Rational(q));
                    }
                    if (!ok) break;
                    g = g + digit;
                    rem = std::move(next);
                    if (i == max_deg && !rem.is_zero()) ok = false;
                }
                // digits are only faithful when xi dominates the result;
                // content is preserved so the caller can normalize
                if (ok && !g.is_zero() && 2 * poly_max_norm(g) + 2 <= xi &&
                    try_div_exact(a, g) && try_div_exact(b, g))
                    return g;
            }
        }
        xi = xi * 73794 / 27011 + 1; // classical growth factor ~2.73
    }
    return std::nullopt;
}

} // namespace

ParamPoly param_gcd(const ParamPoly& a0, const ParamPoly& b0) {
    ParamPoly a = a0, b = b0;
    align_vars(a, b);
    if (a.is_zero() && b.is_zero()) return a;
    // Work with integer-coefficient primitives.
    ParamPoly pa = a.is_zero() ? a : a.primitive_part(true);
    ParamPoly pb = b.is_zero() ? b : b.primitive_part(true);
    if (!pa.is_zero() && !pb.is_zero() && !pa.is_constant() &&
        !pb.is_constant()) {
        if (auto g = gcd_heuristic(pa, pb, 0)) return g->primitive_part(true);
    }
    ParamPoly g = gcd_rec(pa, pb);
    return g.primitive_part(true);
}

ParamPoly param_lcm(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero() || b.is_zero()) return ParamPoly(a.vars());
    ParamPoly g = param_gcd(a, b);
    ParamPoly l = div_exact(a * b, g);
    return l.primitive_part(true);
}

// Term-by-term exact k-th root in graded-lex order; nullopt if `q` is not a
// perfect k-th power.
std::optional<ParamPoly> poly_perfect_root(const ParamPoly& q, unsigned k) {
    if (q.is_zero() || k < 2) return std::nullopt;
    const ExpVec& lm = q.leading_monomial();
    ExpVec rm(lm.size());
    for (std::size_t i = 0; i < lm.size(); ++i) {
        if (lm[i] % k) return std::nullopt;
        rm[i] = lm[i] / k;
    }
    const Rational& lc = q.leading_coeff();
    if (!is_integer(lc)) return std::nullopt;
    Int lead = numerator(lc);
    bool neg = sgn(lead) < 0;
    if (neg && k % 2 == 0) return std::nullopt;
    Int root;
    if (!exact_root(abs(lead), k, root)) return std::nullopt;
    if (neg) root = -root;

    ParamPoly r(q.vars());
    r.add_term(rm, Rational(root));
    Int root_pow = 1;
    for (unsigned i = 0; i + 1 < k; ++i) root_pow *= root;
    Rational corr = Rational(k) * Rational(root_pow); // k * c0^(k-1)
    for (int guard = 0; guard < 4096; ++guard) {
        ParamPoly diff = q - r.pow(k);
        if (diff.is_zero()) return r;
        const ExpVec& dm = diff.leading_monomial();
        ExpVec tm(dm.size());
        for (std::size_t i = 0; i < dm.size(); ++i) {
            std::uint32_t base = rm[i] * (k - 1);
            if (dm[i] < base) return std::nullopt;
            tm[i] = dm[i] - base;
        }
        if (!grlex_greater(rm, tm)) return std::nullopt;
        r.add_term(tm, diff.leading_coeff() / corr);
    }
    return std::nullopt;
}

ParamPoly compose(const ParamPoly& p, const std::vector<ParamPoly>& images) {
    if (images.size() != p.nvars())
        throw InternalError("compose: image list has wrong arity");
    VarsPtr target = images.empty() ? ParamPoly::no_vars() : images[0].vars();
    ParamPoly acc(target);
    for (const auto& [m, c] : p.terms()) {
        ParamPoly term = ParamPoly::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) term = term * images[i].pow(m[i]);
        acc = acc + term;
    }
    return acc;
}

} // namespace singinv
