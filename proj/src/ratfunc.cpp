#include "singinv/ratfunc.hpp"

#include <sstream>

#include "singinv/errors.hpp"

namespace singinv {

namespace {

const ParamPoly& one_poly() {
    static const ParamPoly one = ParamPoly::constant(Rational(1));
    return one;
}

} // namespace

RatFunc::RatFunc(ParamPoly num, ParamPoly den) {
    if (den.is_zero())
        throw UndefinedError("division by the zero rational function");
    align_vars(num, den);
    if (num.is_zero()) {
        num_ = num;
        den_ = one_poly().lifted(num.vars());
        return;
    }
    // Split off rational contents, then cancel the polynomial gcd of the
    // primitive parts; finally attach the reduced rational content so that
    // numerator and denominator are integer polynomials of joint content 1.
    Rational cn = num.content(), cd = den.content();
    ParamPoly pn = num.primitive_part(true);
    ParamPoly pd = den.primitive_part(true);
    if (!pn.is_constant() && !pd.is_constant()) {
        ParamPoly g = param_gcd(pn, pd);
        if (!g.is_constant()) {
            pn = div_exact(pn, g);
            pd = div_exact(pd, g);
        }
    }
    Rational u = cn / cd; // reduced by mpq
    num_ = pn * Rational(numerator(u));
    den_ = pd * Rational(denominator(u));
}

bool RatFunc::is_one() const {
    return num_ == den_;
}

Rational RatFunc::constant_value() const {
    if (!is_constant()) throw InternalError("constant_value of a non-constant");
    return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    if (o.is_zero()) return *this;
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero())
        throw UndefinedError("division by the zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero())
        throw UndefinedError("division by the zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    RatFunc result(Rational(1));
    RatFunc base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

bool RatFunc::operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

bool equal_cross(const RatFunc& a, const RatFunc& b) {
    return a.num() * b.den() == b.num() * a.den();
}

Rational RatFunc::eval(const std::vector<Rational>& values) const {
    Rational d = den_.eval(values);
    if (d == 0) throw UndefinedError("pole at the assignment point");
    return num_.eval(values) / d;
}

Rational RatFunc::eval(const std::map<std::string, Rational>& assignment) const {
    std::vector<Rational> values;
    values.reserve(num_.nvars());
    for (const auto& name : *num_.vars()) {
        auto it = assignment.find(name);
        if (it == assignment.end())
            throw InputError("missing value for parameter: " + name);
        values.push_back(it->second);
    }
    return eval(values);
}

namespace {

RatFunc compose_poly(const ParamPoly& p, const std::vector<RatFunc>& images) {
    RatFunc acc;
    for (const auto& [m, c] : p.terms()) {
        RatFunc term{c};
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) term = term * images[i].pow(m[i]);
        acc = acc + term;
    }
    return acc;
}

} // namespace

RatFunc RatFunc::compose(const std::vector<RatFunc>& images) const {
    if (images.size() != num_.nvars())
        throw InternalError("compose: image list has wrong arity");
    RatFunc n = compose_poly(num_, images);
    RatFunc d = compose_poly(den_, images);
    if (d.is_zero())
        throw UndefinedError("substitution makes the denominator vanish identically");
    return n / d;
}

RatFunc RatFunc::compose_param(const std::string& name,
                               const RatFunc& image) const {
    std::vector<RatFunc> images;
    images.reserve(num_.nvars());
    for (const auto& v : *num_.vars())
        images.push_back(v == name ? image
                                   : RatFunc::variable(num_.vars(), v));
    return compose(images);
}

// ---------------------------------------------------------------------------
// Display

namespace {

// Display decomposition of a positive-leading polynomial: integer content,
// common monomial, and a perfect-power core when one exists.
struct FactoredPoly {
    Int content = 1;
    ExpVec monomial;        // common monomial factor
    ParamPoly core;         // remaining part, or a power base
    unsigned core_exp = 1;  // exponent on core
    bool trivial_core = false;
};

FactoredPoly factor_for_display(const ParamPoly& p) {
    FactoredPoly f;
    f.monomial = ExpVec(p.nvars(), 0);
    if (p.is_zero()) {
        f.core = p;
        f.trivial_core = true;
        f.content = 0;
        return f;
    }
    Rational c = p.content();
    if (!is_integer(abs(c))) {
        // non-integer coefficients: skip factoring, print as-is
        f.core = p;
        return f;
    }
    f.content = numerator(abs(c));
    ParamPoly q = p.primitive_part(true);
    ExpVec common = q.leading_monomial();
    for (const auto& [m, coef] : q.terms()) common = mono_gcd(common, m);
    f.monomial = common;
    if (total_degree(common) > 0) {
        ParamPoly mono(q.vars());
        mono.add_term(common, Rational(1));
        q = div_exact(q, mono);
    }
    if (q.is_constant()) {
        f.trivial_core = true;
        f.core = q;
        return f;
    }
    unsigned deg = q.degree();
    for (unsigned k = deg; k >= 2; --k) {
        if (deg % k) continue;
        if (auto r = poly_perfect_root(q, k)) {
            f.core = *r;
            f.core_exp = k;
            return f;
        }
    }
    f.core = q;
    return f;
}

// Numerators sit left of '/': only top-level sums need wrapping.
// Denominators sit right of '/': top-level products must be wrapped too,
// since "a/2*t" parses as "(a/2)*t".
bool needs_parens(const std::string& s, bool denominator) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth) continue;
        if ((ch == '+' || ch == '-') && i > 0) return true;
        if (denominator && ch == '*') return true;
    }
    return false;
}

// Unsigned factored rendering of a nonzero polynomial.
std::string factored_str(const ParamPoly& p) {
    FactoredPoly f = factor_for_display(p);
    std::vector<std::string> pieces;
    bool monomial_present = total_degree(f.monomial) > 0;
    bool core_present = !f.trivial_core;
    if (f.content != 1 || (!monomial_present && !core_present))
        pieces.push_back(f.content.get_str());
    if (monomial_present) pieces.push_back(mono_str(f.monomial, *p.vars()));
    if (core_present) {
        std::string base = f.core.str();
        bool lone = pieces.empty();
        if (f.core_exp > 1)
            pieces.push_back("(" + base + ")^" + std::to_string(f.core_exp));
        else if (!lone && f.core.terms().size() > 1)
            pieces.push_back("(" + base + ")");
        else
            pieces.push_back(base);
    }
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i) out += "*";
        out += pieces[i];
    }
    return out;
}

std::string operand_str(const ParamPoly& p, bool pretty, bool denominator) {
    std::string s = pretty ? factored_str(p) : p.str();
    return needs_parens(s, denominator) ? "(" + s + ")" : s;
}

} // namespace

std::string RatFunc::str(bool pretty) const {
    if (is_zero()) return "0";
    bool neg = sgn(num_.leading_coeff()) < 0;
    ParamPoly n = neg ? -num_ : num_;
    std::ostringstream os;
    if (den_.is_constant() && den_.constant_value() == 1) {
        std::string body = pretty ? factored_str(n) : n.str();
        if (neg) {
            // keep "-x+..." unambiguous: parenthesize multi-term bodies
            if (needs_parens(body, false)) body = "(" + body + ")";
            os << "-" << body;
        } else {
            os << body;
        }
        return os.str();
    }
    std::string num_str = operand_str(n, pretty, false);
    if (neg) {
        // composite negated numerators are grouped: -(t^3*(...)^3)/(...)
        if (num_str.find_first_of("*(") != std::string::npos &&
            num_str.front() != '(')
            num_str = "(" + num_str + ")";
        os << "-";
    }
    os << num_str << "/" << operand_str(den_, pretty, true);
    return os.str();
}

} // namespace singinv
