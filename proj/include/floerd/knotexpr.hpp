#pragma once

#include <cctype>
#include <string>

#include "floerd/fmodule.hpp"
#include "floerd/knots.hpp"

namespace floerd {

// Mini-language for the models this tool knows how to build:
//   expr   := term ('+' term)*            connected sum (tensor product)
//   term   := [int '*'] factor            tensor power
//   factor := 'unknot' | 'dtref' | 'torus' ':' int ',' int | 'lp' ':' int
//           | '(' expr ')'
// Only the (p-1,p) torus family is supported.
struct KnotExprOptions {
    long long max_generators = 500000;
};

namespace knotexprdetail {

class Parser {
  public:
    Parser(const std::string& text, const KnotExprOptions& opt) : text_(text), opt_(opt) {}

    BifilteredComplex parse() {
        auto c = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw parse_error("unexpected trailing input '" + std::string(1, text_[pos_]) + "'",
                              pos_);
        return c;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    long long integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) throw parse_error("expected integer", start);
        return std::stoll(text_.substr(start, pos_ - start));
    }
    bool keyword(const std::string& kw) {
        skip_ws();
        if (text_.compare(pos_, kw.size(), kw) == 0) {
            size_t end = pos_ + kw.size();
            if (end < text_.size() &&
                std::isalnum(static_cast<unsigned char>(text_[end])))
                return false;
            pos_ = end;
            return true;
        }
        return false;
    }

    BifilteredComplex expr() {
        auto c = term();
        while (eat('+')) {
            auto rhs = term();
            guard(static_cast<long long>(c.size()) * static_cast<long long>(rhs.size()));
            c = tensor(c, rhs);
        }
        return c;
    }

    BifilteredComplex term() {
        skip_ws();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            size_t at = pos_;
            long long k = integer();
            if (!eat('*')) throw parse_error("expected '*' after tensor-power count", pos_);
            if (k < 0 || k > 64) throw parse_error("tensor power out of range", at);
            auto base = factor();
            BifilteredComplex c = unknot_complex();
            for (long long i = 0; i < k; ++i) {
                guard(static_cast<long long>(c.size()) * static_cast<long long>(base.size()));
                c = tensor(c, base);
            }
            c.name = std::to_string(k) + "*" + base.name;
            return c;
        }
        return factor();
    }

    BifilteredComplex factor() {
        skip_ws();
        size_t at = pos_;
        if (eat('(')) {
            auto c = expr();
            if (!eat(')')) throw parse_error("expected ')'", pos_);
            return c;
        }
        if (keyword("unknot")) return unknot_complex();
        if (keyword("dtref")) return doubled_trefoil_model();
        if (keyword("torus")) {
            if (!eat(':')) throw parse_error("expected ':' after 'torus'", pos_);
            long long a = integer();
            if (!eat(',')) throw parse_error("expected ',' in torus:<p-1>,<p>", pos_);
            long long b = integer();
            if (b != a + 1 || b % 2 == 0 || b < 3)
                throw parse_error("only torus:<p-1>,<p> with odd p >= 3 is supported", at);
            return torus_complex(b);
        }
        if (keyword("lp")) {
            if (!eat(':')) throw parse_error("expected ':' after 'lp'", pos_);
            long long p = integer();
            return lp_complex(p, opt_.max_generators);
        }
        throw parse_error("expected a knot expression", at);
    }

    void guard(long long projected) {
        if (projected > opt_.max_generators)
            throw size_error("expression would materialize " + std::to_string(projected) +
                                 " generators (cap " + std::to_string(opt_.max_generators) + ")",
                             projected);
    }

    const std::string& text_;
    KnotExprOptions opt_;
    size_t pos_ = 0;
};

}  // namespace knotexprdetail

inline BifilteredComplex parse_knot_expr(const std::string& text, KnotExprOptions opt = {}) {
    return knotexprdetail::Parser(text, opt).parse();
}

}  // namespace floerd
