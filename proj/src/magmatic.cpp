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

#include "permmut/identities.hpp"

#include <algorithm>
#include <numeric>

namespace permmut::identities {

namespace {

std::string key(const Code& c)
{
    return std::string(c.begin(), c.end());
}

// Shapes with leaves marked 1, ordered by left-subtree size and recursively.
std::vector<Code> shapes(unsigned n)
{
    if (n == 1)
        return {Code{1}};
    std::vector<Code> out;
    for (unsigned l = 1; l < n; ++l) {
        const auto left = shapes(l);
        const auto right = shapes(n - l);
        for (const auto& a : left)
            for (const auto& b : right) {
                Code c{0};
                c.insert(c.end(), a.begin(), a.end());
                c.insert(c.end(), b.begin(), b.end());
                out.push_back(std::move(c));
            }
    }
    return out;
}

std::string letters(const Code& c, std::size_t& pos, bool top)
{
    const std::uint8_t t = c[pos++];
    if (t != 0)
        return std::string(1, static_cast<char>('a' + t - 1));
    std::string l = letters(c, pos, false);
    std::string r = letters(c, pos, false);
    return top ? l + r : "(" + l + r + ")";
}

terms::BracketTerm build(const Code& c, std::size_t& pos, NodeKind kind)
{
    const std::uint8_t t = c[pos++];
    if (t != 0)
        return terms::BracketTerm::leaf("x" + std::to_string(t));
    terms::BracketTerm l = build(c, pos, kind);
    terms::BracketTerm r = build(c, pos, kind);
    return terms::BracketTerm::node(kind, l, r);
}

void encode(const terms::BracketTerm& t, Code& out)
{
    if (t.is_leaf()) {
        auto g = perm::Generator::parse(t.name());
        if (!g || !g->is_variable() || g->index() > 255)
            throw std::invalid_argument("leaf '" + t.name() + "' is not a variable x<i>");
        out.push_back(static_cast<std::uint8_t>(g->index()));
        return;
    }
    out.push_back(0);
    encode(t.left(), out);
    encode(t.right(), out);
}

}  // namespace

std::size_t catalan(unsigned k)
{
    std::size_t c = 1;
    for (unsigned i = 0; i < k; ++i)
        c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

std::size_t factorial(unsigned k)
{
    std::size_t f = 1;
    for (unsigned i = 2; i <= k; ++i)
        f *= i;
    return f;
}

Code code_of(const terms::BracketTerm& t)
{
    Code c;
    encode(t, c);
    return c;
}

terms::BracketTerm term_of(const Code& c, NodeKind kind)
{
    std::size_t pos = 0;
    return build(c, pos, kind);
}

Code relabel(const Code& c, std::span<const std::uint8_t> sigma)
{
    Code out = c;
    for (auto& t : out)
        if (t != 0)
            t = sigma[t - 1];
    return out;
}

MagmaticBasis::MagmaticBasis(unsigned n, MagmaticOrder order, unsigned limit) : n_(n)
{
    if (n == 0)
        throw std::invalid_argument("magmatic degree must be at least 1");
    if (n > limit)
        throw LimitExceeded("degree " + std::to_string(n) + " exceeds the configured limit " +
                            std::to_string(limit));
    if (order == MagmaticOrder::Reference && n != 3)
        throw std::invalid_argument("the reference listing order is only defined in degree 3");

    const auto shape_list = shapes(n);
    shapes_ = shape_list.size();
    codes_.reserve(shapes_ * factorial(n));
    std::vector<std::uint8_t> perm(n);
    for (const auto& s : shape_list) {
        std::iota(perm.begin(), perm.end(), std::uint8_t{1});
        do {
            Code c = s;
            std::size_t leaf = 0;
            for (auto& t : c)
                if (t != 0)
                    t = perm[leaf++];
            codes_.push_back(std::move(c));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    if (order == MagmaticOrder::Reference) {
        static const char* const listing[] = {"a(bc)", "a(cb)", "b(ac)", "b(ca)", "c(ab)", "c(ba)",
                                              "(ab)c", "(ac)b", "(ba)c", "(bc)a", "(ca)b", "(cb)a"};
        std::vector<Code> ordered;
        for (const char* want : listing) {
            auto it = std::find_if(codes_.begin(), codes_.end(), [&](const Code& c) {
                std::size_t pos = 0;
                return letters(c, pos, true) == want;
            });
            ordered.push_back(*it);
        }
        codes_ = std::move(ordered);
    }
    for (std::size_t i = 0; i < codes_.size(); ++i)
        index_.emplace(key(codes_[i]), i);
}

std::optional<std::size_t> MagmaticBasis::index(const Code& c) const
{
    auto it = index_.find(key(c));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

terms::BracketTerm MagmaticBasis::term(std::size_t i, NodeKind kind) const
{
    return term_of(codes_.at(i), kind);
}

std::string MagmaticBasis::label(std::size_t i) const
{
    return term(i).render();
}

std::string MagmaticBasis::letter_label(std::size_t i) const
{
    std::size_t pos = 0;
    return letters(codes_.at(i), pos, true);
}

SparseVector MagmaticBasis::to_vector(const BracketPolynomial& poly, NodeKind kind) const
{
    std::vector<SparseVector::Entry> entries;
    for (const auto& [t, c] : poly.terms()) {
        for (NodeKind k : t.node_kinds())
            if (k != kind)
                throw std::invalid_argument("mixed node kinds in " + t.render());
        auto idx = index(code_of(t));
        if (!idx)
            throw std::invalid_argument(t.render() + " is not a multilinear monomial in x1..x" +
                                        std::to_string(n_));
        entries.emplace_back(*idx, c);
    }
    return SparseVector(std::move(entries));
}

BracketPolynomial MagmaticBasis::to_polynomial(const SparseVector& v, NodeKind kind) const
{
    BracketPolynomial out;
    for (const auto& [i, c] : v)
        out.add_term(term(i, kind), c);
    return out;
}

}  // namespace permmut::identities
