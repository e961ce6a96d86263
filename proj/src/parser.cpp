/*
   Copyright 2026 The permmut Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "permmut/terms.hpp"

#include <cctype>

namespace permmut::terms {

namespace {

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#';
}

class Parser {
public:
    Parser(std::string_view text, const TemplateRegistry& registry) : text_(text), registry_(registry) {}

    BracketPolynomial parse_all()
    {
        BracketPolynomial p = poly();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= text_.size())
                fail(std::string("expected '") + c + "' but reached end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    BracketPolynomial poly()
    {
        BracketPolynomial acc;
        bool negative = false;
        if (accept('-'))
            negative = true;
        else
            accept('+');
        while (true) {
            BracketPolynomial t = term();
            if (negative)
                t *= Rational(-1);
            acc += t;
            if (accept('+'))
                negative = false;
            else if (accept('-'))
                negative = true;
            else
                break;
        }
        return acc;
    }

    std::optional<Rational> rational()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            return std::nullopt;
        std::size_t end = pos_;
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            const std::size_t den = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == den)
                fail("expected denominator");
            end = pos_;
        }
        try {
            return parse_rational(text_.substr(start, end - start));
        } catch (const std::invalid_argument& e) {
            pos_ = start;
            fail(e.what());
        }
    }

    BracketPolynomial term()
    {
        const std::size_t start = pos_;
        Rational coeff = 1;
        if (auto r = rational()) {
            coeff = *r;
            if (!accept('*')) {
                if (coeff == 0)
                    return {};
                pos_ = start;
                skip_ws();
                fail("a coefficient must be followed by '*'");
            }
        }
        BracketPolynomial acc = factor();
        while (accept('*'))
            acc = product(acc, factor());
        acc *= coeff;
        return acc;
    }

    std::string ident()
    {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ >= text_.size() || !ident_start(text_[pos_]))
            fail(pos_ >= text_.size() ? "unexpected end of input" : "unexpected '" + std::string(1, text_[pos_]) + "'");
        while (pos_ < text_.size() && ident_char(text_[pos_]))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::vector<BracketPolynomial> arguments()
    {
        std::vector<BracketPolynomial> args;
        args.push_back(poly());
        while (accept(','))
            args.push_back(poly());
        expect(')');
        return args;
    }

    BracketPolynomial call(const std::string& name, std::size_t name_pos, std::vector<BracketPolynomial> args)
    {
        auto arity = [&](std::size_t n) {
            if (args.size() != n)
                throw ParseError(name + " expects " + std::to_string(n) + " arguments, got " +
                                     std::to_string(args.size()),
                                 name_pos);
        };
        if (name == "circ") {
            arity(2);
            return terms::circ(args[0], args[1]);
        }
        if (name == "bullet") {
            arity(2);
            return terms::bullet(args[0], args[1]);
        }
        if (name == "assoc") {
            arity(3);
            return associator(args[0], args[1], args[2]);
        }
        const IdentityTemplate* t = registry_.find(name);
        if (!t)
            throw ParseError("unknown function '" + name + "'", name_pos);
        arity(t->arity());
        return instantiate(*t, args);
    }

    BracketPolynomial factor()
    {
        const char c = peek();
        if (c == '<' || c == '[') {
            ++pos_;
            BracketPolynomial a = poly();
            expect(',');
            BracketPolynomial b = poly();
            if (c == '<') {
                expect('>');
                return bracket(a, b);
            }
            expect(']');
            return product(a, b) - product(b, a);
        }
        if (c == '(') {
            ++pos_;
            BracketPolynomial inner = poly();
            expect(')');
            return inner;
        }
        const std::size_t name_pos = pos_;
        std::string name = ident();
        if (accept('('))
            return call(name, name_pos, arguments());
        return BracketPolynomial::variable(std::move(name));
    }

    std::string_view text_;
    const TemplateRegistry& registry_;
    std::size_t pos_ = 0;
};

}  // namespace

BracketPolynomial parse(std::string_view text, const TemplateRegistry& registry)
{
    return Parser(text, registry).parse_all();
}

}  // namespace permmut::terms
