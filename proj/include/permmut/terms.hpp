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

// Binary term language over named variables. Two node kinds exist: the
// mutation bracket <u,v> and the ordinary product u*v.

#ifndef PERMMUT_TERMS_HPP
#define PERMMUT_TERMS_HPP

#include "permmut/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace permmut::terms {

enum class NodeKind : std::uint8_t { Bracket, Product };

/// Finite binary tree stored in prefix order.
class BracketTerm {
public:
    static BracketTerm leaf(std::string name);
    static BracketTerm bracket(const BracketTerm& left, const BracketTerm& right);
    static BracketTerm product(const BracketTerm& left, const BracketTerm& right);
    static BracketTerm node(NodeKind kind, const BracketTerm& left, const BracketTerm& right);

    [[nodiscard]] bool is_leaf() const noexcept { return tokens_.front().kind == Token::Kind::Leaf; }
    /// Only meaningful for internal nodes.
    [[nodiscard]] NodeKind kind() const noexcept
    {
        return tokens_.front().kind == Token::Kind::Product ? NodeKind::Product : NodeKind::Bracket;
    }
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] BracketTerm left() const;
    [[nodiscard]] BracketTerm right() const;

    [[nodiscard]] std::size_t degree() const noexcept;
    /// Leaf names in left-to-right order.
    [[nodiscard]] std::vector<std::string> leaves() const;
    /// Node kinds used by internal nodes.
    [[nodiscard]] std::set<NodeKind> node_kinds() const;

    [[nodiscard]] std::string render() const;

    friend auto operator<=>(const BracketTerm&, const BracketTerm&) = default;

private:
    struct Token {
        enum class Kind : std::uint8_t { Leaf, Bracket, Product };
        Kind kind;
        std::string name;
        friend auto operator<=>(const Token&, const Token&) = default;
    };
    BracketTerm() = default;
    std::size_t subtree_end(std::size_t start) const;
    std::string render_from(std::size_t& pos) const;
    std::vector<Token> tokens_;
};

class BracketPolynomial {
public:
    using Terms = std::map<BracketTerm, Rational>;

    BracketPolynomial() = default;
    BracketPolynomial(const BracketTerm& t, const Rational& c = 1);
    static BracketPolynomial variable(std::string name) { return BracketPolynomial(BracketTerm::leaf(std::move(name))); }

    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] Rational coefficient(const BracketTerm& t) const;

    void add_term(const BracketTerm& t, const Rational& c);

    BracketPolynomial& operator+=(const BracketPolynomial& o);
    BracketPolynomial& operator-=(const BracketPolynomial& o);
    BracketPolynomial& operator*=(const Rational& c);
    friend BracketPolynomial operator+(BracketPolynomial a, const BracketPolynomial& b) { return a += b; }
    friend BracketPolynomial operator-(BracketPolynomial a, const BracketPolynomial& b) { return a -= b; }
    friend BracketPolynomial operator-(BracketPolynomial a) { return a *= Rational(-1); }
    friend BracketPolynomial operator*(const Rational& c, BracketPolynomial a) { return a *= c; }
    friend bool operator==(const BracketPolynomial&, const BracketPolynomial&) = default;

    /// All variable names occurring anywhere.
    [[nodiscard]] std::set<std::string> variables() const;
    [[nodiscard]] std::set<NodeKind> node_kinds() const;
    /// Common leaf count of all terms, or nullopt when mixed (or zero).
    [[nodiscard]] std::optional<std::size_t> homogeneous_degree() const;
    /// Every variable occurs exactly once in every term, and all terms share
    /// the same variable set.
    [[nodiscard]] bool is_multilinear() const;

    /// Parseable rendering, e.g. "<a,b> - 2*<b,a>"; "0" for the zero polynomial.
    [[nodiscard]] std::string render() const;

private:
    Terms terms_;
};

/// Bilinear extension of the node constructor.
BracketPolynomial combine(NodeKind kind, const BracketPolynomial& left, const BracketPolynomial& right);
inline BracketPolynomial bracket(const BracketPolynomial& a, const BracketPolynomial& b)
{
    return combine(NodeKind::Bracket, a, b);
}
inline BracketPolynomial product(const BracketPolynomial& a, const BracketPolynomial& b)
{
    return combine(NodeKind::Product, a, b);
}
/// <a,b> - <b,a>
BracketPolynomial circ(const BracketPolynomial& a, const BracketPolynomial& b);
/// <a,b> + <b,a>
BracketPolynomial bullet(const BracketPolynomial& a, const BracketPolynomial& b);
/// <<a,b>,c> - <a,<b,c>>
BracketPolynomial associator(const BracketPolynomial& a, const BracketPolynomial& b, const BracketPolynomial& c);

/// Simultaneous substitution of leaves by polynomials; other leaves are kept.
BracketPolynomial substitute(const BracketPolynomial& poly, const std::map<std::string, BracketPolynomial>& values);
BracketPolynomial rename(const BracketPolynomial& poly, const std::map<std::string, std::string>& names);

/// Full polarization: a variable y occurring k > 1 times in a term is replaced
/// by the sum over all bijections of y#1..y#k onto its occurrences.
BracketPolynomial multilinearize(const BracketPolynomial& poly);

/// Equality as formal linear combinations of trees.
inline bool structural_equal(const BracketPolynomial& a, const BracketPolynomial& b)
{
    return a == b;
}

struct IdentityTemplate {
    std::string name;
    std::vector<std::string> slots;
    BracketPolynomial body;

    [[nodiscard]] std::size_t arity() const noexcept { return slots.size(); }
};

class ArityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Slot-wise substitution; repeated argument names are allowed.
BracketPolynomial instantiate(const IdentityTemplate& t, std::span<const std::string> args);
BracketPolynomial instantiate(const IdentityTemplate& t, std::span<const BracketPolynomial> args);
/// Instance at x1..xk, the form used by the identity engine.
BracketPolynomial instantiate_standard(const IdentityTemplate& t);

/// Named identity templates. builtin() holds f, ftilde, wa, flex, hbar, ibar,
/// conj4a, conj4b, crit36 and the two bicommutative identities; copies can
/// override bodies.
class TemplateRegistry {
public:
    static const TemplateRegistry& builtin();

    [[nodiscard]] const IdentityTemplate* find(std::string_view name) const;
    /// Throws std::invalid_argument for unknown names.
    [[nodiscard]] const IdentityTemplate& at(std::string_view name) const;
    [[nodiscard]] std::vector<std::string> names() const;

    /// Adds or replaces a template. The body is parsed against this registry
    /// and must use exactly the declared slots.
    void define(std::string name, std::vector<std::string> slots, std::string_view body);
    void define(IdentityTemplate t);
    /// One definition per line, "name(slot, ...) = body"; blank lines and
    /// lines starting with '#' are ignored. Errors name the line.
    void load(std::string_view text);

private:
    std::map<std::string, IdentityTemplate, std::less<>> templates_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Parses the term language:
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := [rational '*'] factor ('*' factor)*
///   factor := ident | '<' poly ',' poly '>' | '[' poly ',' poly ']'
///           | ident '(' poly (',' poly)* ')' | '(' poly ')'
/// circ, bullet and assoc expand at parse time; '[a,b]' is the ordinary
/// commutator a*b - b*a. Other calls resolve against the registry.
BracketPolynomial parse(std::string_view text, const TemplateRegistry& registry = TemplateRegistry::builtin());

}  // namespace permmut::terms

#endif  // PERMMUT_TERMS_HPP
