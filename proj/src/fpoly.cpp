#include "singinv/fpoly.hpp"

#include <algorithm>
#include <sstream>

#include "singinv/errors.hpp"

namespace singinv {

VarsPtr FPoly::declare_vars(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw InputError("duplicate variable name: " + names[i]);
    return std::make_shared<const VarList>(names);
}

FPoly FPoly::constant(VarsPtr vars, RatFunc c) {
    FPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(ExpVec(p.nvars(), 0), std::move(c));
    return p;
}

FPoly FPoly::variable(VarsPtr vars, const std::string& name) {
    FPoly p(std::move(vars));
    auto it = std::find(p.vars_->begin(), p.vars_->end(), name);
    if (it == p.vars_->end()) throw InputError("unknown variable: " + name);
    ExpVec e(p.nvars(), 0);
    e[static_cast<std::size_t>(it - p.vars_->begin())] = 1;
    p.terms_.emplace(std::move(e), RatFunc(Rational(1)));
    return p;
}

bool FPoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && is_constant_mono(terms_.begin()->first));
}

RatFunc FPoly::constant_value() const {
    if (terms_.empty()) return RatFunc();
    auto it = terms_.find(ExpVec(nvars(), 0));
    return it == terms_.end() ? RatFunc() : it->second;
}

std::uint32_t FPoly::degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

bool FPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    std::uint32_t d = total_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (total_degree(m) != d) return false;
    return true;
}

const ExpVec& FPoly::leading_monomial() const {
    if (terms_.empty()) throw InternalError("leading term of zero polynomial");
    return terms_.begin()->first;
}

const RatFunc& FPoly::leading_coeff() const {
    if (terms_.empty()) throw InternalError("leading term of zero polynomial");
    return terms_.begin()->second;
}

void FPoly::add_term(const ExpVec& mono, const RatFunc& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FPoly FPoly::operator-() const {
    FPoly r(vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

FPoly FPoly::operator+(const FPoly& o) const {
    FPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

FPoly FPoly::operator-(const FPoly& o) const {
    FPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

FPoly FPoly::operator*(const FPoly& o) const {
    FPoly r(vars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

FPoly FPoly::operator*(const RatFunc& c) const {
    FPoly r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

FPoly FPoly::pow(std::uint32_t k) const {
    FPoly result = constant(vars_, RatFunc(Rational(1)));
    FPoly base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

bool FPoly::operator==(const FPoly& o) const { return terms_ == o.terms_; }

FPoly FPoly::derivative(std::size_t var) const {
    FPoly r(vars_);
    for (const auto& [m, c] : terms_) {
        if (!m[var]) continue;
        ExpVec e = m;
        e[var] -= 1;
        r.add_term(e, c * RatFunc(Rational(m[var])));
    }
    return r;
}

FPoly FPoly::substitute(const std::vector<FPoly>& images) const {
    if (images.size() != nvars())
        throw InternalError("substitute: image list has wrong arity");
    VarsPtr target = images.empty() ? vars_ : images[0].vars();
    FPoly acc(target);
    for (const auto& [m, c] : terms_) {
        FPoly term = FPoly::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) term = term * images[i].pow(m[i]);
        acc = acc + term;
    }
    return acc;
}

RatFunc FPoly::coeff(const ExpVec& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? RatFunc() : it->second;
}

std::string FPoly::str(bool pretty) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.str(pretty);
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? "-" : "+");
        }
        bool composite = cs.find_first_of("+-/(") != std::string::npos;
        if (is_constant_mono(m)) {
            os << (composite && neg ? "(" + cs + ")" : cs);
        } else {
            if (cs != "1") {
                os << (composite ? "(" + cs + ")" : cs) << "*";
            }
            os << mono_str(m, *vars_);
        }
    }
    return os.str();
}

} // namespace singinv
