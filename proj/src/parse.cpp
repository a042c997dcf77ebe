#include "singinv/parse.hpp"

#include <algorithm>
#include <cctype>

#include "singinv/errors.hpp"

namespace singinv {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos);
    }
};

class Parser {
public:
    Parser(const std::string& text, VarsPtr fvars, VarsPtr pvars)
        : lex_{text}, fvars_(std::move(fvars)), pvars_(std::move(pvars)) {}

    FPoly parse() {
        FPoly result = expr();
        if (!lex_.eof())
            throw ParseError("unexpected trailing input", lex_.pos);
        return result;
    }

private:
    Lexer lex_;
    VarsPtr fvars_;
    VarsPtr pvars_;

    FPoly expr() {
        FPoly acc = term();
        for (;;) {
            if (lex_.accept('+'))
                acc = acc + term();
            else if (lex_.accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    FPoly term() {
        FPoly acc = factor();
        for (;;) {
            if (lex_.accept('*')) {
                acc = acc * factor();
            } else if (lex_.peek() == '/') {
                std::size_t at = lex_.pos;
                ++lex_.pos;
                FPoly d = factor();
                if (!d.is_constant())
                    throw ParseError("divisor must be free of form variables", at);
                if (d.constant_value().is_zero())
                    throw ParseError("division by zero", at);
                acc = acc * d.constant_value().inverse();
            } else {
                return acc;
            }
        }
    }

    FPoly factor() {
        FPoly b = base();
        if (lex_.peek() == '^') {
            std::size_t at = lex_.pos;
            ++lex_.pos;
            unsigned long e = natural();
            if (e > 512)
                throw ParseError("exponent too large", at);
            b = b.pow(static_cast<std::uint32_t>(e));
        }
        return b;
    }

    FPoly base() {
        char c = lex_.peek();
        if (c == '-') {
            ++lex_.pos;
            return -factor();
        }
        if (c == '(') {
            ++lex_.pos;
            FPoly inner = expr();
            lex_.expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            unsigned long n = natural();
            return FPoly::constant(fvars_, RatFunc(Rational(static_cast<long>(n))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = lex_.pos;
            std::string name = identifier();
            if (std::find(fvars_->begin(), fvars_->end(), name) != fvars_->end())
                return FPoly::variable(fvars_, name);
            if (std::find(pvars_->begin(), pvars_->end(), name) != pvars_->end())
                return FPoly::constant(fvars_, RatFunc::variable(pvars_, name));
            throw ParseError("unknown identifier '" + name + "'", at);
        }
        throw ParseError("expected a factor", lex_.pos);
    }

    unsigned long natural() {
        lex_.skip_ws();
        std::size_t at = lex_.pos;
        if (at >= lex_.text.size() ||
            !std::isdigit(static_cast<unsigned char>(lex_.text[at])))
            throw ParseError("expected a number", at);
        std::string digits;
        while (lex_.pos < lex_.text.size() &&
               std::isdigit(static_cast<unsigned char>(lex_.text[lex_.pos])))
            digits += lex_.text[lex_.pos++];
        if (digits.size() > 18)
            throw ParseError("numeric literal too large", at);
        return std::stoul(digits);
    }

    std::string identifier() {
        lex_.skip_ws();
        std::string name;
        while (lex_.pos < lex_.text.size()) {
            char ch = lex_.text[lex_.pos];
            if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
                name += ch;
                ++lex_.pos;
            } else {
                break;
            }
        }
        return name;
    }
};

void check_disjoint(const std::vector<std::string>& form_vars,
                    const std::vector<std::string>& params) {
    for (const auto& v : form_vars)
        if (std::find(params.begin(), params.end(), v) != params.end())
            throw InputError("name used as both variable and parameter: " + v);
}

} // namespace

FPoly parse_poly(const std::string& text,
                 const std::vector<std::string>& form_vars,
                 const std::vector<std::string>& params) {
    check_disjoint(form_vars, params);
    VarsPtr fv = FPoly::declare_vars(form_vars);
    VarsPtr pv = ParamPoly::make_vars(params);
    Parser p(text, fv, pv);
    return p.parse();
}

RatFunc parse_ratfunc(const std::string& text,
                      const std::vector<std::string>& params) {
    FPoly p = parse_poly(text, {}, params);
    return p.constant_value();
}

} // namespace singinv
