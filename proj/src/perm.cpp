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

#include "permmut/perm.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace permmut::perm {

Generator Generator::x(std::uint32_t index)
{
    if (index == 0 || index >= kP)
        throw std::invalid_argument("variable index must be positive");
    return Generator(index);
}

std::optional<Generator> Generator::parse(std::string_view name)
{
    if (name == "p")
        return p();
    if (name == "q")
        return q();
    if (name.size() < 2 || name.front() != 'x' || name[1] == '0')
        return std::nullopt;
    std::uint32_t idx = 0;
    const char* first = name.data() + 1;
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, idx);
    if (ec != std::errc{} || ptr != last || idx == 0 || idx >= kP)
        return std::nullopt;
    return Generator(idx);
}

std::string Generator::name() const
{
    if (is_p())
        return "p";
    if (is_q())
        return "q";
    return "x" + std::to_string(code_);
}

unsigned total_degree(const Multidegree& m)
{
    unsigned d = 0;
    for (const auto& [v, e] : m)
        d += e;
    return d;
}

std::string to_string(const Multidegree& m)
{
    std::string out = "{";
    bool first = true;
    for (const auto& [v, e] : m) {
        if (!first)
            out += ", ";
        first = false;
        out += "x" + std::to_string(v) + ":" + std::to_string(e);
    }
    return out + "}";
}

// ---------------------------------------------------------------------------

PermMonomial::PermMonomial(std::vector<Generator> prefix, Generator tail)
    : prefix_(std::move(prefix)), tail_(tail)
{
    std::sort(prefix_.begin(), prefix_.end());
}

unsigned PermMonomial::x_degree() const noexcept
{
    unsigned d = tail_.is_variable() ? 1 : 0;
    for (Generator g : prefix_)
        d += g.is_variable() ? 1 : 0;
    return d;
}

unsigned PermMonomial::p_degree() const noexcept
{
    unsigned d = tail_.is_p() ? 1 : 0;
    for (Generator g : prefix_)
        d += g.is_p() ? 1 : 0;
    return d;
}

unsigned PermMonomial::q_degree() const noexcept
{
    unsigned d = tail_.is_q() ? 1 : 0;
    for (Generator g : prefix_)
        d += g.is_q() ? 1 : 0;
    return d;
}

Multidegree PermMonomial::multidegree() const
{
    Multidegree m;
    for (Generator g : prefix_)
        if (g.is_variable())
            ++m[g.index()];
    if (tail_.is_variable())
        ++m[tail_.index()];
    return m;
}

std::string PermMonomial::render() const
{
    std::string out;
    for (Generator g : prefix_) {
        out += g.name();
        out += ' ';
    }
    out += tail_.name();
    return out;
}

std::strong_ordering operator<=>(const PermMonomial& a, const PermMonomial& b)
{
    if (auto c = a.degree() <=> b.degree(); c != 0)
        return c;
    if (auto c = a.tail_ <=> b.tail_; c != 0)
        return c;
    return std::lexicographical_compare_three_way(a.prefix_.begin(), a.prefix_.end(), b.prefix_.begin(),
                                                  b.prefix_.end());
}

std::strong_ordering monomial_order(const PermMonomial& a, const PermMonomial& b)
{
    return a <=> b;
}

PermMonomial normalize_word(std::span<const Generator> word)
{
    if (word.empty())
        throw std::invalid_argument("empty word");
    return PermMonomial(std::vector<Generator>(word.begin(), word.end() - 1), word.back());
}

PermMonomial operator*(const PermMonomial& a, const PermMonomial& b)
{
    std::vector<Generator> left = a.prefix();
    left.insert(std::upper_bound(left.begin(), left.end(), a.tail()), a.tail());
    std::vector<Generator> merged;
    merged.reserve(left.size() + b.prefix().size());
    std::merge(left.begin(), left.end(), b.prefix().begin(), b.prefix().end(), std::back_inserter(merged));
    return PermMonomial(std::move(merged), b.tail());
}

// ---------------------------------------------------------------------------

PermElement::PermElement(const PermMonomial& m, const Rational& c)
{
    if (c != 0)
        terms_.emplace(m, c);
}

Rational PermElement::coefficient(const PermMonomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void PermElement::add_term(const PermMonomial& m, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

PermElement& PermElement::operator+=(const PermElement& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

PermElement& PermElement::operator-=(const PermElement& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

PermElement& PermElement::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

PermElement operator*(const PermElement& a, const PermElement& b)
{
    PermElement out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term(ma * mb, ca * cb);
    return out;
}

std::map<Multidegree, PermElement> PermElement::homogeneous_parts() const
{
    std::map<Multidegree, PermElement> parts;
    for (const auto& [m, c] : terms_)
        parts[m.multidegree()].add_term(m, c);
    return parts;
}

std::string PermElement::render() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        const Rational mag = abs(c);
        if (mag != 1)
            out += mag.get_str() + " ";
        out += m.render();
    }
    return out;
}

PermElement multiply(const PermElement& a, const PermElement& b)
{
    return a * b;
}

PermElement commutator(const PermElement& a, const PermElement& b)
{
    return a * b - b * a;
}

PermElement product(std::span<const PermElement> factors)
{
    if (factors.empty())
        throw std::invalid_argument("empty word");
    PermElement acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = acc * factors[i];
    return acc;
}

// ---------------------------------------------------------------------------

MonomialIndex::MonomialIndex(std::vector<PermMonomial> monomials) : monomials_(std::move(monomials))
{
    std::sort(monomials_.begin(), monomials_.end());
    monomials_.erase(std::unique(monomials_.begin(), monomials_.end()), monomials_.end());
}

MonomialIndex MonomialIndex::covering(std::span<const PermElement> elements)
{
    std::vector<PermMonomial> all;
    for (const auto& e : elements)
        for (const auto& [m, c] : e.terms())
            all.push_back(m);
    return MonomialIndex(std::move(all));
}

std::optional<std::size_t> MonomialIndex::find(const PermMonomial& m) const
{
    auto it = std::lower_bound(monomials_.begin(), monomials_.end(), m);
    if (it == monomials_.end() || *it != m)
        return std::nullopt;
    return static_cast<std::size_t>(it - monomials_.begin());
}

std::optional<linalg::SparseVector> MonomialIndex::try_vector(const PermElement& e) const
{
    std::vector<linalg::SparseVector::Entry> entries;
    entries.reserve(e.size());
    for (const auto& [m, c] : e.terms()) {
        auto idx = find(m);
        if (!idx)
            return std::nullopt;
        entries.emplace_back(*idx, c);
    }
    return linalg::SparseVector(std::move(entries));
}

linalg::SparseVector MonomialIndex::to_vector(const PermElement& e) const
{
    auto v = try_vector(e);
    if (!v)
        throw std::out_of_range("monomial outside the column basis");
    return *std::move(v);
}

PermElement MonomialIndex::to_element(const linalg::SparseVector& v) const
{
    PermElement e;
    for (const auto& [i, c] : v)
        e.add_term(monomials_.at(i), c);
    return e;
}

std::vector<std::string> MonomialIndex::labels() const
{
    std::vector<std::string> out;
    out.reserve(monomials_.size());
    for (const auto& m : monomials_)
        out.push_back(m.render());
    return out;
}

}  // namespace permmut::perm
