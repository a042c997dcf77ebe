#include "singinv/tensor.hpp"

#include <algorithm>
#include <sstream>

#include "singinv/errors.hpp"

namespace singinv {

namespace {

std::size_t pow_sz(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp--) r *= base;
    return r;
}

/// Odometer over index tuples; returns false after the last tuple.
bool next_tuple(std::vector<std::size_t>& idx, std::size_t dim) {
    for (std::size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < dim) return true;
        idx[i] = 0;
    }
    return false;
}

int permutation_sign(const std::vector<std::size_t>& idx) {
    // 0 on repeats, else the sign of the permutation
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) sign = -sign;
        }
    return sign;
}

} // namespace

Tensor::Tensor(std::size_t dim, std::vector<Variance> slots)
    : dim_(dim), slots_(std::move(slots)),
      data_(pow_sz(dim, slots_.size())) {
    if (dim < 1) throw InputError("tensor dimension must be positive");
}

std::size_t Tensor::flatten(const std::vector<std::size_t>& idx) const {
    if (idx.size() != slots_.size())
        throw InternalError("tensor index has wrong valence");
    std::size_t f = 0;
    for (std::size_t i : idx) {
        if (i >= dim_) throw InternalError("tensor index out of range");
        f = f * dim_ + i;
    }
    return f;
}

const RatFunc& Tensor::at(const std::vector<std::size_t>& idx) const {
    return data_[flatten(idx)];
}

void Tensor::set(const std::vector<std::size_t>& idx, RatFunc v) {
    data_[flatten(idx)] = std::move(v);
}

RatFunc Tensor::scalar_value() const {
    if (!is_scalar()) throw InternalError("tensor is not a scalar");
    return data_[0];
}

bool Tensor::is_zero() const {
    for (const auto& v : data_)
        if (!v.is_zero()) return false;
    return true;
}

bool Tensor::operator==(const Tensor& o) const {
    return dim_ == o.dim_ && slots_ == o.slots_ && data_ == o.data_;
}

Tensor Tensor::levi_civita(std::size_t n) {
    if (n < 2) throw InputError("Levi-Civita needs dimension >= 2");
    Tensor t(n, std::vector<Variance>(n, Variance::Upper));
    std::vector<std::size_t> idx(n, 0);
    do {
        int s = permutation_sign(idx);
        if (s) t.set(idx, RatFunc(Rational(s)));
    } while (next_tuple(idx, n));
    return t;
}

Tensor Tensor::from_symmetric(const SymmetricTensor& s) {
    Tensor t(s.dim(), std::vector<Variance>(s.valence(), Variance::Lower));
    if (s.valence() == 0) throw InternalError("symmetric tensor of valence 0");
    std::vector<std::size_t> idx(s.valence(), 0);
    do {
        RatFunc v = s.at(idx);
        if (!v.is_zero()) t.set(idx, std::move(v));
    } while (next_tuple(idx, s.dim()));
    return t;
}

Tensor Tensor::basis_vector(std::size_t dim, std::size_t index) {
    Tensor t(dim, {Variance::Upper});
    if (index >= dim) throw InputError("basis direction out of range");
    t.set({index}, RatFunc(Rational(1)));
    return t;
}

// ---------------------------------------------------------------------------
// Spec parsing

namespace {

void skip_spaces(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

std::string read_name(const std::string& s, std::size_t& i) {
    std::string name;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
            s[i] == '.'))
        name += s[i++];
    if (name.empty()) throw ParseError("expected a tensor name", i);
    return name;
}

} // namespace

ContractionSpec ContractionSpec::parse(const std::string& line) {
    ContractionSpec spec;
    std::size_t i = 0;
    skip_spaces(line, i);
    spec.result_name = read_name(line, i);
    skip_spaces(line, i);
    if (i >= line.size() || line[i] != '[')
        throw ParseError("expected '[' after result name", i);
    ++i;
    bool upper = false;
    while (i < line.size() && line[i] != ']') {
        char c = line[i];
        if (c == '^') {
            upper = true;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            spec.result_labels.push_back(c);
            spec.result_variance.push_back(upper ? Variance::Upper
                                                 : Variance::Lower);
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw ParseError("bad character in label list", i);
        }
        ++i;
    }
    if (i >= line.size()) throw ParseError("unterminated label list", i);
    ++i; // ']'
    skip_spaces(line, i);
    if (i >= line.size() || line[i] != '=')
        throw ParseError("expected '='", i);
    ++i;
    for (;;) {
        skip_spaces(line, i);
        if (i >= line.size()) break;
        Factor f;
        f.name = read_name(line, i);
        skip_spaces(line, i);
        if (i >= line.size() || line[i] != '[')
            throw ParseError("expected '[' after factor name", i);
        ++i;
        while (i < line.size() && line[i] != ']') {
            char c = line[i];
            if (c == '^') {
                f.caret = f.labels.size();
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                f.labels.push_back(c);
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                throw ParseError("bad character in label list", i);
            }
            ++i;
        }
        if (i >= line.size()) throw ParseError("unterminated label list", i);
        ++i;
        spec.factors.push_back(std::move(f));
    }
    if (spec.factors.empty())
        throw ParseError("contraction needs at least one factor", i);
    return spec;
}

std::string ContractionSpec::str() const {
    std::ostringstream os;
    os << result_name << "[";
    bool upper = false;
    for (std::size_t i = 0; i < result_labels.size(); ++i) {
        if (!upper && result_variance[i] == Variance::Upper) {
            os << "^";
            upper = true;
        }
        os << result_labels[i];
    }
    os << "] =";
    for (const auto& f : factors) {
        os << " " << f.name << "[";
        for (std::size_t i = 0; i < f.labels.size(); ++i) {
            if (f.caret && *f.caret == i) os << "^";
            os << f.labels[i];
        }
        os << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct BoundFactor {
    const Tensor* tensor;
    std::vector<char> labels;
};

std::vector<BoundFactor> resolve(const ContractionSpec& spec,
                                 const TensorBindings& bindings,
                                 std::size_t& dim) {
    std::vector<BoundFactor> out;
    dim = 0;
    for (const auto& f : spec.factors) {
        auto it = bindings.find(f.name);
        if (it == bindings.end())
            throw InputError("unbound tensor name: " + f.name);
        const Tensor& t = it->second;
        if (f.labels.size() != t.valence())
            throw InputError("factor " + f.name + " has " +
                             std::to_string(t.valence()) + " slots, got " +
                             std::to_string(f.labels.size()) + " labels");
        if (dim == 0) dim = t.dim();
        if (t.dim() != dim)
            throw InputError("dimension mismatch at factor " + f.name);
        if (f.caret) {
            for (std::size_t i = 0; i < f.labels.size(); ++i) {
                Variance want =
                    i < *f.caret ? Variance::Lower : Variance::Upper;
                if (t.slots()[i] != want)
                    throw InputError("declared variance of " + f.name +
                                     " does not match the bound tensor");
            }
        }
        out.push_back({&t, f.labels});
    }
    return out;
}

// occurrence check + free-label variance
void validate_labels(const ContractionSpec& spec,
                     const std::vector<BoundFactor>& bf) {
    std::map<char, std::vector<Variance>> occ;
    for (const auto& f : bf)
        for (std::size_t i = 0; i < f.labels.size(); ++i)
            occ[f.labels[i]].push_back(f.tensor->slots()[i]);
    std::map<char, Variance> free_variance;
    for (const auto& [label, vs] : occ) {
        if (vs.size() == 1) {
            free_variance[label] = vs[0];
        } else if (vs.size() == 2) {
            if (vs[0] == vs[1])
                throw InputError(std::string("label '") + label +
                                 "' pairs two slots of the same variance");
        } else {
            throw InputError(std::string("label '") + label +
                             "' appears more than twice");
        }
    }
    if (free_variance.size() != spec.result_labels.size())
        throw InputError("free labels do not match the declared result");
    for (std::size_t i = 0; i < spec.result_labels.size(); ++i) {
        auto it = free_variance.find(spec.result_labels[i]);
        if (it == free_variance.end())
            throw InputError(std::string("result label '") +
                             spec.result_labels[i] + "' is not free");
        if (it->second != spec.result_variance[i])
            throw InputError(std::string("result label '") +
                             spec.result_labels[i] +
                             "' has the wrong declared variance");
    }
}

// Contracts any label occurring twice within the same tensor (a trace).
void trace_internal(Tensor& t, std::vector<char>& labels) {
    for (;;) {
        std::size_t p = labels.size(), q = labels.size();
        for (std::size_t i = 0; i < labels.size() && q == labels.size(); ++i)
            for (std::size_t j = i + 1; j < labels.size(); ++j)
                if (labels[i] == labels[j]) {
                    p = i;
                    q = j;
                    break;
                }
        if (q == labels.size()) return;
        std::vector<Variance> slots;
        std::vector<char> new_labels;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (i == p || i == q) continue;
            slots.push_back(t.slots()[i]);
            new_labels.push_back(labels[i]);
        }
        Tensor r(t.dim(), slots);
        std::vector<std::size_t> out(slots.size(), 0);
        if (slots.empty()) {
            RatFunc acc;
            std::vector<std::size_t> idx(labels.size(), 0);
            for (std::size_t d = 0; d < t.dim(); ++d) {
                idx[p] = idx[q] = d;
                acc += t.at(idx);
            }
            r.set({}, acc);
        } else {
            do {
                RatFunc acc;
                for (std::size_t d = 0; d < t.dim(); ++d) {
                    std::vector<std::size_t> idx(labels.size());
                    std::size_t k = 0;
                    for (std::size_t i = 0; i < labels.size(); ++i) {
                        if (i == p || i == q)
                            idx[i] = d;
                        else
                            idx[i] = out[k++];
                    }
                    acc += t.at(idx);
                }
                r.set(out, acc);
            } while (next_tuple(out, t.dim()));
        }
        t = std::move(r);
        labels = std::move(new_labels);
    }
}

// Merges B into A, contracting labels common to both.
void merge(Tensor& a, std::vector<char>& la, const Tensor& b,
           const std::vector<char>& lb) {
    std::vector<std::size_t> a_shared, b_shared, a_keep, b_keep;
    for (std::size_t i = 0; i < la.size(); ++i) {
        auto it = std::find(lb.begin(), lb.end(), la[i]);
        if (it != lb.end()) {
            a_shared.push_back(i);
            b_shared.push_back(static_cast<std::size_t>(it - lb.begin()));
        } else {
            a_keep.push_back(i);
        }
    }
    for (std::size_t j = 0; j < lb.size(); ++j)
        if (std::find(la.begin(), la.end(), lb[j]) == la.end())
            b_keep.push_back(j);

    std::vector<Variance> slots;
    std::vector<char> labels;
    for (auto i : a_keep) {
        slots.push_back(a.slots()[i]);
        labels.push_back(la[i]);
    }
    for (auto j : b_keep) {
        slots.push_back(b.slots()[j]);
        labels.push_back(lb[j]);
    }

    Tensor r(a.dim(), slots);
    std::vector<std::size_t> out(slots.size(), 0);
    std::vector<std::size_t> ia(la.size()), ib(lb.size());
    bool more_out = true;
    while (more_out) {
        RatFunc acc;
        std::vector<std::size_t> shared(a_shared.size(), 0);
        bool more_shared = true;
        while (more_shared) {
            for (std::size_t k = 0; k < a_keep.size(); ++k)
                ia[a_keep[k]] = out[k];
            for (std::size_t k = 0; k < b_keep.size(); ++k)
                ib[b_keep[k]] = out[a_keep.size() + k];
            for (std::size_t k = 0; k < a_shared.size(); ++k) {
                ia[a_shared[k]] = shared[k];
                ib[b_shared[k]] = shared[k];
            }
            const RatFunc& av = a.at(ia);
            if (!av.is_zero()) {
                const RatFunc& bv = b.at(ib);
                if (!bv.is_zero()) acc += av * bv;
            }
            more_shared = !shared.empty() && next_tuple(shared, a.dim());
        }
        r.set(out, std::move(acc));
        more_out = !out.empty() && next_tuple(out, a.dim());
    }
    a = std::move(r);
    la = std::move(labels);
}

// Reorders slots into the declared result label order.
Tensor reorder(const Tensor& t, const std::vector<char>& have,
               const std::vector<char>& want) {
    if (have == want) return t;
    std::vector<std::size_t> perm(want.size());
    std::vector<Variance> slots(want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        auto it = std::find(have.begin(), have.end(), want[i]);
        if (it == have.end()) throw InternalError("lost a free label");
        perm[i] = static_cast<std::size_t>(it - have.begin());
        slots[i] = t.slots()[perm[i]];
    }
    Tensor r(t.dim(), slots);
    std::vector<std::size_t> out(want.size(), 0);
    bool more = true;
    while (more) {
        std::vector<std::size_t> in(want.size());
        for (std::size_t i = 0; i < want.size(); ++i) in[perm[i]] = out[i];
        r.set(out, t.at(in));
        more = !out.empty() && next_tuple(out, t.dim());
    }
    return r;
}

} // namespace

Tensor contract(const ContractionSpec& spec, const TensorBindings& bindings) {
    std::size_t dim = 0;
    auto bf = resolve(spec, bindings, dim);
    validate_labels(spec, bf);

    Tensor acc = *bf[0].tensor;
    std::vector<char> labels = bf[0].labels;
    trace_internal(acc, labels);
    for (std::size_t k = 1; k < bf.size(); ++k) {
        Tensor f = *bf[k].tensor;
        std::vector<char> fl = bf[k].labels;
        trace_internal(f, fl);
        merge(acc, labels, f, fl);
    }
    return reorder(acc, labels, spec.result_labels);
}

Tensor contract_bruteforce(const ContractionSpec& spec,
                           const TensorBindings& bindings) {
    std::size_t dim = 0;
    auto bf = resolve(spec, bindings, dim);
    validate_labels(spec, bf);

    std::vector<char> all_labels;
    for (const auto& f : bf)
        for (char c : f.labels)
            if (std::find(all_labels.begin(), all_labels.end(), c) ==
                all_labels.end())
                all_labels.push_back(c);

    Tensor result(dim, spec.result_variance);
    std::vector<std::size_t> assign(all_labels.size(), 0);
    std::vector<std::size_t> out(spec.result_labels.size());
    bool more = true;
    while (more) {
        RatFunc prod(Rational(1));
        bool zero = false;
        for (const auto& f : bf) {
            std::vector<std::size_t> idx(f.labels.size());
            for (std::size_t i = 0; i < f.labels.size(); ++i) {
                auto it = std::find(all_labels.begin(), all_labels.end(),
                                    f.labels[i]);
                idx[i] = assign[static_cast<std::size_t>(
                    it - all_labels.begin())];
            }
            const RatFunc& v = f.tensor->at(idx);
            if (v.is_zero()) {
                zero = true;
                break;
            }
            prod = prod * v;
        }
        if (!zero) {
            for (std::size_t i = 0; i < spec.result_labels.size(); ++i) {
                auto it = std::find(all_labels.begin(), all_labels.end(),
                                    spec.result_labels[i]);
                out[i] = assign[static_cast<std::size_t>(
                    it - all_labels.begin())];
            }
            result.set(out, result.at(out) + prod);
        }
        more = !assign.empty() && next_tuple(assign, dim);
    }
    return result;
}

} // namespace singinv
