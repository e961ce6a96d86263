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

// The free perm algebra P(X u {p, q}): associative with abc = bac.
//
// A left-normed word a1 a2 ... an only depends on the multiset {a1..a(n-1)}
// and on the last letter, so a monomial is stored as a sorted prefix plus a
// tail. The product of monomials is (P1, t1)(P2, t2) = (P1 + {t1} + P2, t2).

#ifndef PERMMUT_PERM_HPP
#define PERMMUT_PERM_HPP

#include "permmut/linalg.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permmut::perm {

/// x_i (i >= 1), p or q. Ordered x1 < x2 < ... < p < q.
class Generator {
public:
    static Generator x(std::uint32_t index);
    static Generator p() noexcept { return Generator(kP); }
    static Generator q() noexcept { return Generator(kQ); }
    /// "x<i>", "p" or "q".
    static std::optional<Generator> parse(std::string_view name);

    [[nodiscard]] bool is_variable() const noexcept { return code_ < kP; }
    [[nodiscard]] bool is_p() const noexcept { return code_ == kP; }
    [[nodiscard]] bool is_q() const noexcept { return code_ == kQ; }
    /// Variable index i of x_i; 0 for parameters.
    [[nodiscard]] std::uint32_t index() const noexcept { return is_variable() ? code_ : 0; }
    [[nodiscard]] std::string name() const;

    friend auto operator<=>(const Generator&, const Generator&) = default;

private:
    static constexpr std::uint32_t kP = 0xFFFFFFFEu;
    static constexpr std::uint32_t kQ = 0xFFFFFFFFu;
    explicit constexpr Generator(std::uint32_t code) noexcept : code_(code) {}
    std::uint32_t code_;
};

/// x-variable index -> exponent.
using Multidegree = std::map<std::uint32_t, unsigned>;
unsigned total_degree(const Multidegree& m);
std::string to_string(const Multidegree& m);

class PermMonomial {
public:
    /// Sorts the prefix.
    PermMonomial(std::vector<Generator> prefix, Generator tail);
    explicit PermMonomial(Generator g) : tail_(g) {}

    [[nodiscard]] const std::vector<Generator>& prefix() const noexcept { return prefix_; }
    [[nodiscard]] Generator tail() const noexcept { return tail_; }
    [[nodiscard]] std::size_t degree() const noexcept { return prefix_.size() + 1; }
    [[nodiscard]] unsigned x_degree() const noexcept;
    [[nodiscard]] unsigned p_degree() const noexcept;
    [[nodiscard]] unsigned q_degree() const noexcept;
    [[nodiscard]] unsigned param_degree() const noexcept { return p_degree() + q_degree(); }
    [[nodiscard]] Multidegree multidegree() const;

    /// "x1 x2 p x3": prefix in ascending order, then the tail.
    [[nodiscard]] std::string render() const;

    friend bool operator==(const PermMonomial&, const PermMonomial&) = default;
    /// Global monomial order: degree, then tail, then prefix lexicographically.
    friend std::strong_ordering operator<=>(const PermMonomial& a, const PermMonomial& b);

private:
    std::vector<Generator> prefix_;
    Generator tail_;
};

std::strong_ordering monomial_order(const PermMonomial& a, const PermMonomial& b);

/// Canonical form of a nonempty left-normed word. Throws std::invalid_argument
/// ("empty word") otherwise.
PermMonomial normalize_word(std::span<const Generator> word);

PermMonomial operator*(const PermMonomial& a, const PermMonomial& b);

class PermElement {
public:
    using Terms = std::map<PermMonomial, Rational>;

    PermElement() = default;
    PermElement(const PermMonomial& m, const Rational& c = 1);

    static PermElement generator(Generator g) { return PermElement(PermMonomial(g)); }
    static PermElement x(std::uint32_t i) { return generator(Generator::x(i)); }
    static PermElement p() { return generator(Generator::p()); }
    static PermElement q() { return generator(Generator::q()); }

    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] Rational coefficient(const PermMonomial& m) const;

    void add_term(const PermMonomial& m, const Rational& c);

    PermElement& operator+=(const PermElement& o);
    PermElement& operator-=(const PermElement& o);
    PermElement& operator*=(const Rational& c);
    friend PermElement operator+(PermElement a, const PermElement& b) { return a += b; }
    friend PermElement operator-(PermElement a, const PermElement& b) { return a -= b; }
    friend PermElement operator-(PermElement a) { return a *= Rational(-1); }
    friend PermElement operator*(const Rational& c, PermElement a) { return a *= c; }
    friend PermElement operator*(const PermElement& a, const PermElement& b);
    friend bool operator==(const PermElement&, const PermElement&) = default;

    /// Splits the element by x-multidegree.
    [[nodiscard]] std::map<Multidegree, PermElement> homogeneous_parts() const;

    /// Terms in global order, e.g. "x1 p x2 - x2 q x1"; "0" for zero.
    [[nodiscard]] std::string render() const;

private:
    Terms terms_;
};

PermElement multiply(const PermElement& a, const PermElement& b);
/// [a, b] = ab - ba
PermElement commutator(const PermElement& a, const PermElement& b);
/// Left-normed product a1 a2 ... an.
PermElement product(std::span<const PermElement> factors);

/// Sorted set of monomials serving as the column basis for linear algebra.
class MonomialIndex {
public:
    MonomialIndex() = default;
    explicit MonomialIndex(std::vector<PermMonomial> monomials);
    /// Columns spanned by the supports of the given elements.
    static MonomialIndex covering(std::span<const PermElement> elements);

    [[nodiscard]] std::size_t size() const noexcept { return monomials_.size(); }
    [[nodiscard]] const std::vector<PermMonomial>& monomials() const noexcept { return monomials_; }
    [[nodiscard]] std::optional<std::size_t> find(const PermMonomial& m) const;
    /// Throws std::out_of_range if the support leaves the index.
    [[nodiscard]] linalg::SparseVector to_vector(const PermElement& e) const;
    [[nodiscard]] std::optional<linalg::SparseVector> try_vector(const PermElement& e) const;
    [[nodiscard]] PermElement to_element(const linalg::SparseVector& v) const;
    [[nodiscard]] std::vector<std::string> labels() const;

private:
    std::vector<PermMonomial> monomials_;
};

}  // namespace permmut::perm

#endif  // PERMMUT_PERM_HPP
