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

#include <algorithm>
#include <numeric>

namespace permmut::terms {

BracketTerm BracketTerm::leaf(std::string name)
{
    if (name.empty())
        throw std::invalid_argument("empty variable name");
    BracketTerm t;
    t.tokens_.push_back({Token::Kind::Leaf, std::move(name)});
    return t;
}

BracketTerm BracketTerm::node(NodeKind kind, const BracketTerm& left, const BracketTerm& right)
{
    BracketTerm t;
    t.tokens_.reserve(1 + left.tokens_.size() + right.tokens_.size());
    t.tokens_.push_back({kind == NodeKind::Product ? Token::Kind::Product : Token::Kind::Bracket, {}});
    t.tokens_.insert(t.tokens_.end(), left.tokens_.begin(), left.tokens_.end());
    t.tokens_.insert(t.tokens_.end(), right.tokens_.begin(), right.tokens_.end());
    return t;
}

BracketTerm BracketTerm::bracket(const BracketTerm& left, const BracketTerm& right)
{
    return node(NodeKind::Bracket, left, right);
}

BracketTerm BracketTerm::product(const BracketTerm& left, const BracketTerm& right)
{
    return node(NodeKind::Product, left, right);
}

const std::string& BracketTerm::name() const
{
    if (!is_leaf())
        throw std::logic_error("BracketTerm::name on an internal node");
    return tokens_.front().name;
}

std::size_t BracketTerm::subtree_end(std::size_t start) const
{
    std::size_t need = 1;
    std::size_t i = start;
    while (need > 0) {
        need += tokens_[i].kind == Token::Kind::Leaf ? 0 : 2;
        --need;
        ++i;
    }
    return i;
}

BracketTerm BracketTerm::left() const
{
    if (is_leaf())
        throw std::logic_error("BracketTerm::left on a leaf");
    BracketTerm t;
    t.tokens_.assign(tokens_.begin() + 1, tokens_.begin() + static_cast<std::ptrdiff_t>(subtree_end(1)));
    return t;
}

BracketTerm BracketTerm::right() const
{
    if (is_leaf())
        throw std::logic_error("BracketTerm::right on a leaf");
    BracketTerm t;
    t.tokens_.assign(tokens_.begin() + static_cast<std::ptrdiff_t>(subtree_end(1)), tokens_.end());
    return t;
}

std::size_t BracketTerm::degree() const noexcept
{
    return static_cast<std::size_t>(std::count_if(tokens_.begin(), tokens_.end(),
                                                  [](const Token& t) { return t.kind == Token::Kind::Leaf; }));
}

std::vector<std::string> BracketTerm::leaves() const
{
    std::vector<std::string> out;
    for (const auto& t : tokens_)
        if (t.kind == Token::Kind::Leaf)
            out.push_back(t.name);
    return out;
}

std::set<NodeKind> BracketTerm::node_kinds() const
{
    std::set<NodeKind> out;
    for (const auto& t : tokens_) {
        if (t.kind == Token::Kind::Bracket)
            out.insert(NodeKind::Bracket);
        else if (t.kind == Token::Kind::Product)
            out.insert(NodeKind::Product);
    }
    return out;
}

std::string BracketTerm::render_from(std::size_t& pos) const
{
    const Token& t = tokens_[pos++];
    if (t.kind == Token::Kind::Leaf)
        return t.name;
    std::string l = render_from(pos);
    std::string r = render_from(pos);
    if (t.kind == Token::Kind::Bracket)
        return "<" + l + "," + r + ">";
    return "(" + l + "*" + r + ")";
}

std::string BracketTerm::render() const
{
    std::size_t pos = 0;
    return render_from(pos);
}

// ---------------------------------------------------------------------------

BracketPolynomial::BracketPolynomial(const BracketTerm& t, const Rational& c)
{
    if (c != 0)
        terms_.emplace(t, c);
}

Rational BracketPolynomial::coefficient(const BracketTerm& t) const
{
    auto it = terms_.find(t);
    return it == terms_.end() ? Rational(0) : it->second;
}

void BracketPolynomial::add_term(const BracketTerm& t, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

BracketPolynomial& BracketPolynomial::operator+=(const BracketPolynomial& o)
{
    for (const auto& [t, c] : o.terms_)
        add_term(t, c);
    return *this;
}

BracketPolynomial& BracketPolynomial::operator-=(const BracketPolynomial& o)
{
    for (const auto& [t, c] : o.terms_)
        add_term(t, -c);
    return *this;
}

BracketPolynomial& BracketPolynomial::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [t, v] : terms_)
        v *= c;
    return *this;
}

std::set<std::string> BracketPolynomial::variables() const
{
    std::set<std::string> out;
    for (const auto& [t, c] : terms_)
        for (auto& n : t.leaves())
            out.insert(std::move(n));
    return out;
}

std::set<NodeKind> BracketPolynomial::node_kinds() const
{
    std::set<NodeKind> out;
    for (const auto& [t, c] : terms_)
        out.merge(t.node_kinds());
    return out;
}

std::optional<std::size_t> BracketPolynomial::homogeneous_degree() const
{
    std::optional<std::size_t> deg;
    for (const auto& [t, c] : terms_) {
        if (deg && *deg != t.degree())
            return std::nullopt;
        deg = t.degree();
    }
    return deg;
}

bool BracketPolynomial::is_multilinear() const
{
    std::optional<std::vector<std::string>> shared;
    for (const auto& [t, c] : terms_) {
        auto names = t.leaves();
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            return false;
        if (shared && *shared != names)
            return false;
        shared = std::move(names);
    }
    return true;
}

std::string BracketPolynomial::render() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        const bool negative = c < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        const Rational mag = abs(c);
        if (mag != 1)
            out += mag.get_str() + "*";
        out += t.render();
    }
    return out;
}

// ---------------------------------------------------------------------------

BracketPolynomial combine(NodeKind kind, const BracketPolynomial& left, const BracketPolynomial& right)
{
    BracketPolynomial out;
    for (const auto& [a, ca] : left.terms())
        for (const auto& [b, cb] : right.terms())
            out.add_term(BracketTerm::node(kind, a, b), ca * cb);
    return out;
}

BracketPolynomial circ(const BracketPolynomial& a, const BracketPolynomial& b)
{
    return bracket(a, b) - bracket(b, a);
}

BracketPolynomial bullet(const BracketPolynomial& a, const BracketPolynomial& b)
{
    return bracket(a, b) + bracket(b, a);
}

BracketPolynomial associator(const BracketPolynomial& a, const BracketPolynomial& b, const BracketPolynomial& c)
{
    return bracket(bracket(a, b), c) - bracket(a, bracket(b, c));
}

namespace {

BracketPolynomial substitute_term(const BracketTerm& t, const std::map<std::string, BracketPolynomial>& values)
{
    if (t.is_leaf()) {
        auto it = values.find(t.name());
        return it == values.end() ? BracketPolynomial(t) : it->second;
    }
    return combine(t.kind(), substitute_term(t.left(), values), substitute_term(t.right(), values));
}

// Replaces the k-th leaf (left to right) by names[k].
BracketTerm relabel_leaves(const BracketTerm& t, const std::vector<std::string>& names, std::size_t& pos)
{
    if (t.is_leaf())
        return BracketTerm::leaf(names[pos++]);
    BracketTerm l = relabel_leaves(t.left(), names, pos);
    BracketTerm r = relabel_leaves(t.right(), names, pos);
    return BracketTerm::node(t.kind(), l, r);
}

}  // namespace

BracketPolynomial substitute(const BracketPolynomial& poly, const std::map<std::string, BracketPolynomial>& values)
{
    BracketPolynomial out;
    for (const auto& [t, c] : poly.terms()) {
        BracketPolynomial s = substitute_term(t, values);
        s *= c;
        out += s;
    }
    return out;
}

BracketPolynomial rename(const BracketPolynomial& poly, const std::map<std::string, std::string>& names)
{
    BracketPolynomial out;
    for (const auto& [t, c] : poly.terms()) {
        auto leaves = t.leaves();
        for (auto& l : leaves)
            if (auto it = names.find(l); it != names.end())
                l = it->second;
        std::size_t pos = 0;
        out.add_term(relabel_leaves(t, leaves, pos), c);
    }
    return out;
}

BracketPolynomial multilinearize(const BracketPolynomial& poly)
{
    BracketPolynomial out;
    for (const auto& [t, c] : poly.terms()) {
        const auto leaves = t.leaves();
        std::map<std::string, std::vector<std::size_t>> occurrences;
        for (std::size_t i = 0; i < leaves.size(); ++i)
            occurrences[leaves[i]].push_back(i);

        // Each repeated variable gets an independent permutation of its copies.
        std::vector<std::pair<std::string, std::vector<std::size_t>>> repeated;
        for (auto& [name, pos] : occurrences)
            if (pos.size() > 1)
                repeated.emplace_back(name, pos);
        std::vector<std::vector<std::size_t>> perms;
        for (auto& [name, pos] : repeated) {
            std::vector<std::size_t> id(pos.size());
            std::iota(id.begin(), id.end(), 1);
            perms.push_back(id);
        }

        while (true) {
            std::vector<std::string> names = leaves;
            for (std::size_t r = 0; r < repeated.size(); ++r) {
                const auto& [name, pos] = repeated[r];
                for (std::size_t k = 0; k < pos.size(); ++k)
                    names[pos[k]] = name + "#" + std::to_string(perms[r][k]);
            }
            std::size_t cursor = 0;
            out.add_term(relabel_leaves(t, names, cursor), c);

            // Odometer over the product of permutation groups.
            std::size_t r = 0;
            for (; r < perms.size(); ++r) {
                if (std::next_permutation(perms[r].begin(), perms[r].end()))
                    break;
            }
            if (r == perms.size())
                break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

BracketPolynomial instantiate(const IdentityTemplate& t, std::span<const BracketPolynomial> args)
{
    if (args.size() != t.arity())
        throw ArityError(t.name + " expects " + std::to_string(t.arity()) + " arguments, got " +
                         std::to_string(args.size()));
    std::map<std::string, BracketPolynomial> values;
    for (std::size_t i = 0; i < args.size(); ++i)
        values.emplace(t.slots[i], args[i]);
    return substitute(t.body, values);
}

BracketPolynomial instantiate(const IdentityTemplate& t, std::span<const std::string> args)
{
    std::vector<BracketPolynomial> polys;
    polys.reserve(args.size());
    for (const auto& a : args)
        polys.push_back(BracketPolynomial::variable(a));
    return instantiate(t, polys);
}

BracketPolynomial instantiate_standard(const IdentityTemplate& t)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= t.arity(); ++i)
        names.push_back("x" + std::to_string(i));
    return instantiate(t, names);
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)), position_(position)
{
}

}  // namespace permmut::terms
