#include "singinv/form.hpp"

#include <algorithm>

#include "singinv/errors.hpp"
#include "singinv/parse.hpp"

namespace singinv {

HomogeneousForm::HomogeneousForm(VarsPtr vars, std::uint32_t degree)
    : vars_(std::move(vars)), degree_(degree) {
    if (vars_->empty()) throw InputError("a form needs at least one variable");
    if (degree_ < 1) throw InputError("a form needs degree at least 1");
}

HomogeneousForm HomogeneousForm::from_poly(const FPoly& p) {
    if (p.is_zero())
        throw InputError("the zero polynomial is not a form");
    if (!p.is_homogeneous())
        throw InputError("polynomial is not homogeneous");
    HomogeneousForm f(p.vars(), p.degree());
    for (const auto& [m, c] : p.terms()) f.coeffs_.emplace(m, c);
    return f;
}

HomogeneousForm HomogeneousForm::parse(
    const std::string& text, const std::vector<std::string>& form_vars,
    const std::vector<std::string>& params) {
    return from_poly(parse_poly(text, form_vars, params));
}

RatFunc HomogeneousForm::coeff(const ExpVec& mono) const {
    auto it = coeffs_.find(mono);
    return it == coeffs_.end() ? RatFunc() : it->second;
}

void HomogeneousForm::add_term(const ExpVec& mono, const RatFunc& c) {
    if (c.is_zero()) return;
    if (total_degree(mono) != degree_)
        throw InternalError("form term has wrong degree");
    auto [it, inserted] = coeffs_.emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

HomogeneousForm HomogeneousForm::operator*(const RatFunc& c) const {
    HomogeneousForm r(vars_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : coeffs_) r.coeffs_.emplace(m, k * c);
    return r;
}

bool HomogeneousForm::operator==(const HomogeneousForm& o) const {
    return degree_ == o.degree_ && coeffs_ == o.coeffs_;
}

bool HomogeneousForm::proportional_to(const HomogeneousForm& o) const {
    if (degree_ != o.degree_ || nvars() != o.nvars()) return false;
    if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
    // cross-multiply by the two leading coefficients
    const auto& [m0, c0] = *coeffs_.begin();
    if (o.coeffs_.begin()->first != m0) return false;
    const RatFunc& d0 = o.coeffs_.begin()->second;
    if (coeffs_.size() != o.coeffs_.size()) return false;
    auto it = coeffs_.begin();
    auto jt = o.coeffs_.begin();
    for (; it != coeffs_.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (it->second * d0 != jt->second * c0) return false;
    }
    return true;
}

HomogeneousForm HomogeneousForm::linear_substitute(
    const std::vector<std::vector<RatFunc>>& M) const {
    if (M.size() != nvars())
        throw InputError("substitution matrix must be n x n");
    for (const auto& row : M)
        if (row.size() != nvars())
            throw InputError("substitution matrix must be n x n");
    std::vector<FPoly> images;
    images.reserve(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
        FPoly img(vars_);
        for (std::size_t j = 0; j < nvars(); ++j) {
            ExpVec e(nvars(), 0);
            e[j] = 1;
            img.add_term(e, M[i][j]);
        }
        images.push_back(std::move(img));
    }
    FPoly substituted = to_poly().substitute(images);
    if (substituted.is_zero()) {
        // Singular substitutions can kill the form; keep the shape.
        return HomogeneousForm(vars_, degree_);
    }
    return from_poly(substituted);
}

HomogeneousForm HomogeneousForm::scale_normalized() const {
    if (is_zero()) return *this;
    // common denominator: polynomial lcm of primitive parts plus integer lcm
    // of denominator contents
    ParamPoly lcm_pp = ParamPoly::constant(Rational(1));
    Int lcm_int = 1;
    for (const auto& [m, c] : coeffs_) {
        lcm_pp = param_lcm(lcm_pp, c.den().primitive_part(true));
        Int dc = numerator(c.den().content());
        mpz_lcm(lcm_int.get_mpz_t(), lcm_int.get_mpz_t(), dc.get_mpz_t());
    }
    std::vector<std::pair<ExpVec, ParamPoly>> cleared;
    for (const auto& [m, c] : coeffs_) {
        Int dc = numerator(c.den().content());
        ParamPoly scale = div_exact(lcm_pp, c.den().primitive_part(true));
        Int int_scale;
        mpz_divexact(int_scale.get_mpz_t(), lcm_int.get_mpz_t(), dc.get_mpz_t());
        cleared.emplace_back(m, c.num() * scale * Rational(int_scale));
    }
    // divide by the polynomial gcd and the joint integer content
    ParamPoly g;
    Int ic = 0;
    for (auto& [m, p] : cleared) {
        g = param_gcd(g, p);
        mpz_gcd(ic.get_mpz_t(), ic.get_mpz_t(),
                numerator(p.content()).get_mpz_t());
    }
    if (ic == 0) ic = 1;
    bool flip = false;
    {
        // sign from the graded-lex-first coefficient
        const ParamPoly& first = cleared.front().second;
        flip = sgn(first.leading_coeff()) < 0;
    }
    HomogeneousForm r(vars_, degree_);
    for (auto& [m, p] : cleared) {
        ParamPoly q = g.is_constant() ? p : div_exact(p, g);
        q = q * Rational(Int(flip ? -1 : 1), ic);
        r.coeffs_.emplace(m, RatFunc(q));
    }
    return r;
}

FPoly HomogeneousForm::to_poly() const {
    FPoly p(vars_);
    for (const auto& [m, c] : coeffs_) p.add_term(m, c);
    return p;
}

std::string HomogeneousForm::str(bool pretty) const {
    return to_poly().str(pretty);
}

SymmetricTensor HomogeneousForm::to_tensor() const {
    SymmetricTensor t(nvars(), degree_);
    for (const auto& [m, c] : coeffs_) {
        std::vector<std::size_t> idx;
        idx.reserve(degree_);
        for (std::size_t v = 0; v < m.size(); ++v)
            for (std::uint32_t k = 0; k < m[v]; ++k) idx.push_back(v);
        t.set(idx, c / RatFunc(Rational(multinomial(m))));
    }
    return t;
}

RatFunc SymmetricTensor::at(std::vector<std::size_t> idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = entries_.find(idx);
    return it == entries_.end() ? RatFunc() : it->second;
}

void SymmetricTensor::set(std::vector<std::size_t> idx, const RatFunc& v) {
    if (idx.size() != valence_)
        throw InternalError("symmetric tensor index has wrong valence");
    for (auto i : idx)
        if (i >= dim_) throw InternalError("symmetric tensor index out of range");
    std::sort(idx.begin(), idx.end());
    if (v.is_zero())
        entries_.erase(idx);
    else
        entries_[idx] = v;
}

bool SymmetricTensor::operator==(const SymmetricTensor& o) const {
    return dim_ == o.dim_ && valence_ == o.valence_ && entries_ == o.entries_;
}

HomogeneousForm SymmetricTensor::to_form(VarsPtr vars) const {
    if (vars->size() != dim_)
        throw InternalError("variable list does not match tensor dimension");
    HomogeneousForm f(std::move(vars), valence_);
    for (const auto& [idx, v] : entries_) {
        ExpVec m(dim_, 0);
        for (auto i : idx) m[i] += 1;
        f.add_term(m, v * RatFunc(Rational(multinomial(m))));
    }
    return f;
}

} // namespace singinv
