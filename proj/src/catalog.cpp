#include "singinv/catalog.hpp"

#include <algorithm>
#include <sstream>

#include "singinv/errors.hpp"
#include "singinv/parse.hpp"

namespace singinv {

namespace {

const char* const kBuiltinCatalog = R"CAT(
# Invariant library.
#
# Bound tensor names inside contraction programs:
#   a    the form's symmetric tensor, all indices lower
#   eps  Levi-Civita symbol, all indices upper, eps[12..n] = 1
#   e    distinguished direction (unit vector), one upper index
#
# Within [..] the letters are index labels; labels after '^' are upper slots
# of the covariant being defined.  A label appearing twice is summed over,
# pairing one upper and one lower slot.  Each entry ends by contracting to a
# scalar named like the entry.  Ratios of entries with matching homogeneity
# are declared with 'absolute'.

entry ternary_cubic.J shape 3 3
  b[ij^kl] = a[pqi] a[rsj] eps[prk] eps[qsl]
  J[] = b[ij^kl] b[kl^ij]
end

entry ternary_cubic.K shape 3 3
  b[ij^kl] = a[pqi] a[rsj] eps[prk] eps[qsl]
  c[ijk] = b[ij^pq] a[pqk]
  d[^ijk] = b[pq^ir] a[rst] eps[ptk] eps[qjs]
  K[] = c[ijk] d[^ijk]
end

entry binary_quartic.J shape 2 4
  b[ij^kl] = a[ijpq] eps[pk] eps[ql]
  J[] = b[ij^kl] b[kl^ij]
end

entry binary_quartic.K shape 2 4
  b[ij^kl] = a[ijpq] eps[pk] eps[ql]
  K[] = b[ij^kl] b[kl^mn] b[mn^ij]
end

entry binary_sextic.J shape 2 6
  b[^ijklmn] = a[pqrstu] eps[pi] eps[qj] eps[rk] eps[sl] eps[tm] eps[un]
  c[ij^kl] = a[ijpqrs] b[^klpqrs]
  J[] = c[ij^ij]
end

entry binary_sextic.K shape 2 6
  b[^ijklmn] = a[pqrstu] eps[pi] eps[qj] eps[rk] eps[sl] eps[tm] eps[un]
  c[ij^kl] = a[ijpqrs] b[^klpqrs]
  K[] = c[ij^kl] c[kl^ij]
end

entry binary_sextic.L shape 2 6
  b[^ijklmn] = a[pqrstu] eps[pi] eps[qj] eps[rk] eps[sl] eps[tm] eps[un]
  c[ij^kl] = a[ijpqrs] b[^klpqrs]
  L[] = c[ij^kl] c[kl^mn] c[mn^ij]
end

entry binary_sextic.M shape 2 6
  b[^ijklmn] = a[pqrstu] eps[pi] eps[qj] eps[rk] eps[sl] eps[tm] eps[un]
  c[ij^kl] = a[ijpqrs] b[^klpqrs]
  d[ij] = a[ijpqrs] c[tu^rs] eps[pt] eps[qu]
  M[] = b[^pqrstu] d[pq] d[rs] d[tu]
end

entry binary_sextic.N shape 2 6
  b[^ijklmn] = a[pqrstu] eps[pi] eps[qj] eps[rk] eps[sl] eps[tm] eps[un]
  c[ij^kl] = a[ijpqrs] b[^klpqrs]
  d[ij] = a[ijpqrs] c[tu^rs] eps[pt] eps[qu]
  f[ij] = c[ij^pq] d[pq]
  g[ij] = c[ij^pq] f[pq]
  N[] = eps[qr] eps[st] eps[up] d[pq] f[rs] g[tu]
end

entry binary_cubic.J shape 2 3
  c[i^j] = a[ipq] eps[jk] eps[pl] eps[qm] a[klm]
  J[] = c[i^j] c[j^i]
end

entry parabolic_binary_cubic.K shape 2 3
  K[] = a[ijk] e[^i] e[^j] e[^k]
end

entry parabolic_binary_cubic.L shape 2 3
  L[] = a[ijk] a[lmn] eps[il] eps[jm] e[^k] e[^n]
end

# Absolute invariants: ratios of equal homogeneity in a, eps, and e.

absolute j_ternary shape 3 3 := J^3 / (J^3 - 6*K^2)
absolute j_ternary_moduli shape 3 3 := (J^3 - 6*K^2) / J^3
absolute j_quartic shape 2 4 := 4*J^3 / (4*J^3 - 24*K^2)
absolute j_quartic_moduli shape 2 4 := J^3 / (6*K^2)
absolute j_parabolic_cubic shape 2 3 := J*K^2 / L^3
absolute j_sextic_moduli shape 2 6 := J^2 / (J^2 - 2*K)
absolute sextic_pair_1 shape 2 6 := 3*J^2 / (5*(J^2 - 2*K))
absolute sextic_pair_2 shape 2 6 := 759375*M^2 / (J^2 - 2*K)^5
)CAT";

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

struct Degrees {
    unsigned a = 0, eps = 0, e = 0;
};

} // namespace

Catalog Catalog::parse(const std::string& text) {
    Catalog cat;
    cat.text_ = text;
    std::istringstream is(text);
    std::string line;
    CatalogEntry* current = nullptr;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw InputError("catalog line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto words = split_ws(line);
        if (words.empty()) continue;
        if (words[0] == "entry") {
            if (current) fail("previous entry not closed with 'end'");
            if (words.size() != 5 || words[2] != "shape")
                fail("expected: entry <name> shape <n> <N>");
            CatalogEntry e;
            e.name = words[1];
            auto dot = e.name.rfind('.');
            e.short_name = dot == std::string::npos ? e.name
                                                    : e.name.substr(dot + 1);
            e.n = std::stoul(words[3]);
            e.N = static_cast<std::uint32_t>(std::stoul(words[4]));
            cat.entries_.push_back(std::move(e));
            current = &cat.entries_.back();
        } else if (words[0] == "end") {
            if (!current) fail("'end' without an open entry");
            current = nullptr;
        } else if (words[0] == "absolute") {
            if (current) fail("'absolute' inside an entry");
            // absolute <name> shape <n> <N> := <expression>
            auto pos = line.find(":=");
            if (words.size() < 6 || words[2] != "shape" ||
                pos == std::string::npos)
                fail("expected: absolute <name> shape <n> <N> := <expr>");
            AbsoluteInvariant ai;
            ai.name = words[1];
            ai.n = std::stoul(words[3]);
            ai.N = static_cast<std::uint32_t>(std::stoul(words[4]));
            std::vector<std::string> names;
            for (const auto& e : cat.entries_)
                if (e.n == ai.n && e.N == ai.N) names.push_back(e.short_name);
            RatFunc value;
            try {
                value = parse_ratfunc(line.substr(pos + 2), names);
            } catch (const ParseError& pe) {
                fail(std::string("bad expression: ") + pe.what());
            }
            ai.num = value.num();
            ai.den = value.den();
            cat.absolutes_.push_back(std::move(ai));
        } else if (current) {
            try {
                current->program.push_back(ContractionSpec::parse(line));
            } catch (const ParseError& pe) {
                fail(std::string("bad contraction: ") + pe.what());
            }
        } else {
            fail("unexpected line outside any entry");
        }
    }
    if (current) throw InputError("catalog ended inside an entry");
    cat.validate();
    return cat;
}

void Catalog::validate() {
    for (auto& e : entries_) {
        if (e.program.empty())
            throw InputError("entry " + e.name + " has no contraction steps");
        std::map<std::string, Degrees> defined;
        Degrees final_deg;
        for (const auto& step : e.program) {
            Degrees d;
            for (const auto& f : step.factors) {
                if (f.name == "a") {
                    d.a += 1;
                } else if (f.name == "eps") {
                    d.eps += 1;
                } else if (f.name == "e") {
                    d.e += 1;
                } else {
                    auto it = defined.find(f.name);
                    if (it == defined.end())
                        throw InputError("entry " + e.name +
                                         " uses undefined covariant " + f.name);
                    d.a += it->second.a;
                    d.eps += it->second.eps;
                    d.e += it->second.e;
                }
            }
            defined[step.result_name] = d;
            final_deg = d;
        }
        const auto& last = e.program.back();
        if (!last.result_labels.empty())
            throw InputError("entry " + e.name + " does not end in a scalar");
        if (last.result_name != e.short_name)
            throw InputError("entry " + e.name +
                             " must end by defining " + e.short_name);
        e.degree_a = final_deg.a;
        e.degree_eps = final_deg.eps;
        e.degree_e = final_deg.e;
        // slot bookkeeping: every lower index of the a's is absorbed by an
        // eps (n slots each) or an e (one slot)
        if (e.degree_a * e.N != e.n * e.degree_eps + e.degree_e)
            throw InputError("entry " + e.name +
                             ": slot count does not balance");
        if (!e.parabolic() && (e.degree_a * e.N) % e.n != 0)
            throw InputError("entry " + e.name +
                             ": n does not divide d*N for an SL entry");
    }
    for (const auto& ai : absolutes_) {
        if (ai.den.is_zero())
            throw InputError("absolute " + ai.name + ": zero denominator");
        auto degree_triple = [&](const ExpVec& mono,
                                 const VarList& names) -> Degrees {
            Degrees d;
            for (std::size_t i = 0; i < mono.size(); ++i) {
                if (!mono[i]) continue;
                const CatalogEntry* found = nullptr;
                for (const auto& e : entries_)
                    if (e.n == ai.n && e.N == ai.N &&
                        e.short_name == names[i])
                        found = &e;
                if (!found)
                    throw InputError("absolute " + ai.name +
                                     " references unknown entry " + names[i]);
                d.a += mono[i] * found->degree_a;
                d.eps += mono[i] * found->degree_eps;
                d.e += mono[i] * found->degree_e;
            }
            return d;
        };
        bool have = false;
        Degrees want;
        auto check_side = [&](const ParamPoly& p) {
            for (const auto& [m, c] : p.terms()) {
                Degrees d = degree_triple(m, *p.vars());
                if (!have) {
                    want = d;
                    have = true;
                } else if (d.a != want.a || d.eps != want.eps ||
                           d.e != want.e) {
                    throw InputError(
                        "absolute " + ai.name +
                        ": numerator and denominator are not of matching "
                        "homogeneity in a, eps, and e");
                }
            }
        };
        check_side(ai.num);
        check_side(ai.den);
    }
}

const Catalog& Catalog::builtin() {
    static const Catalog cat = Catalog::parse(kBuiltinCatalog);
    return cat;
}

const CatalogEntry& Catalog::entry(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name) return e;
    throw InputError("unknown catalog entry: " + name);
}

const AbsoluteInvariant& Catalog::absolute(const std::string& name) const {
    for (const auto& a : absolutes_)
        if (a.name == name) return a;
    throw InputError("unknown absolute invariant: " + name);
}

bool Catalog::has_absolute(const std::string& name) const {
    for (const auto& a : absolutes_)
        if (a.name == name) return true;
    return false;
}

unsigned Catalog::weight_of(const std::string& name) const {
    const CatalogEntry& e = entry(name);
    if (e.parabolic()) return e.degree_eps;
    return e.degree_a * e.N / static_cast<unsigned>(e.n);
}

namespace {

RatFunc run_program(const CatalogEntry& e, const HomogeneousForm& p,
                    std::size_t e_index, bool brute) {
    if (p.nvars() != e.n || p.degree() != e.N)
        throw InputError("entry " + e.name + " expects a degree-" +
                         std::to_string(e.N) + " form in " +
                         std::to_string(e.n) + " variables");
    if (e_index < 1 || e_index > e.n)
        throw InputError("distinguished direction out of range");
    TensorBindings bindings;
    bindings.emplace("a", Tensor::from_symmetric(p.to_tensor()));
    bindings.emplace("eps", Tensor::levi_civita(e.n));
    bindings.emplace("e", Tensor::basis_vector(e.n, e_index - 1));
    RatFunc result;
    for (const auto& step : e.program) {
        Tensor t = brute ? contract_bruteforce(step, bindings)
                         : contract(step, bindings);
        if (step.result_labels.empty()) result = t.scalar_value();
        bindings.insert_or_assign(step.result_name, std::move(t));
    }
    return result;
}

} // namespace

RatFunc Catalog::evaluate_entry(const std::string& name,
                                const HomogeneousForm& p,
                                std::size_t e_index) const {
    return run_program(entry(name), p, e_index, false);
}

RatFunc Catalog::evaluate_entry_bruteforce(const std::string& name,
                                           const HomogeneousForm& p,
                                           std::size_t e_index) const {
    return run_program(entry(name), p, e_index, true);
}

RatFunc Catalog::evaluate_absolute(const std::string& name,
                                   const HomogeneousForm& p,
                                   std::size_t e_index) const {
    const AbsoluteInvariant& ai = absolute(name);
    if (p.nvars() != ai.n || p.degree() != ai.N)
        throw InputError("absolute " + ai.name + " expects a degree-" +
                         std::to_string(ai.N) + " form in " +
                         std::to_string(ai.n) + " variables");
    // evaluate each referenced entry once
    std::map<std::string, RatFunc> values;
    auto value_of = [&](const std::string& short_name) -> const RatFunc& {
        auto it = values.find(short_name);
        if (it != values.end()) return it->second;
        for (const auto& e : entries_)
            if (e.n == ai.n && e.N == ai.N && e.short_name == short_name)
                return values.emplace(short_name,
                                      run_program(e, p, e_index, false))
                    .first->second;
        throw InternalError("absolute references unknown entry");
    };
    auto eval_side = [&](const ParamPoly& poly) {
        RatFunc acc;
        for (const auto& [m, c] : poly.terms()) {
            RatFunc term(c);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) term = term * value_of((*poly.vars())[i]).pow(m[i]);
            acc = acc + term;
        }
        return acc;
    };
    RatFunc den = eval_side(ai.den);
    if (den.is_zero())
        throw UndefinedError("invariant " + ai.name +
                             " undefined: denominator vanishes on this "
                             "(degenerate) form");
    return eval_side(ai.num) / den;
}

bool sextic_syzygy_holds(const Catalog& cat, const HomogeneousForm& sextic) {
    RatFunc J = cat.evaluate_entry("binary_sextic.J", sextic);
    RatFunc K = cat.evaluate_entry("binary_sextic.K", sextic);
    RatFunc L = cat.evaluate_entry("binary_sextic.L", sextic);
    return (J.pow(3) + RatFunc(Rational(3)) * J * K -
            RatFunc(Rational(10)) * L)
        .is_zero();
}

std::vector<std::pair<std::string, RatFunc>> sextic_relation_data(
    const Catalog& cat, const HomogeneousForm& sextic) {
    RatFunc J = cat.evaluate_entry("binary_sextic.J", sextic);
    RatFunc K = cat.evaluate_entry("binary_sextic.K", sextic);
    RatFunc L = cat.evaluate_entry("binary_sextic.L", sextic);
    RatFunc M = cat.evaluate_entry("binary_sextic.M", sextic);
    RatFunc N = cat.evaluate_entry("binary_sextic.N", sextic);
    std::vector<std::pair<std::string, RatFunc>> out;
    out.emplace_back("N^2", N * N);
    // degree-30 monomials in J (2), K (4), L (6), M (10)
    for (unsigned dm = 0; dm * 10 <= 30; ++dm)
        for (unsigned dl = 0; dm * 10 + dl * 6 <= 30; ++dl)
            for (unsigned dk = 0; dm * 10 + dl * 6 + dk * 4 <= 30; ++dk) {
                unsigned rest = 30 - dm * 10 - dl * 6 - dk * 4;
                if (rest % 2) continue;
                unsigned dj = rest / 2;
                std::string label;
                auto append = [&](const std::string& s, unsigned k) {
                    if (!k) return;
                    if (!label.empty()) label += "*";
                    label += s;
                    if (k > 1) label += "^" + std::to_string(k);
                };
                append("J", dj);
                append("K", dk);
                append("L", dl);
                append("M", dm);
                if (label.empty()) continue;
                out.emplace_back(label, J.pow(dj) * K.pow(dk) * L.pow(dl) *
                                            M.pow(dm));
            }
    return out;
}

} // namespace singinv
