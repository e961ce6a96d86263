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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "permmut/mutation.hpp"

#include <random>
#include <set>

using namespace permmut;
using namespace permmut::mutation;
using perm::Generator;
using perm::PermMonomial;

namespace {

const Generator x1 = Generator::x(1), x2 = Generator::x(2), x3 = Generator::x(3), p = Generator::p(),
                q = Generator::q();

PermElement mono(std::vector<Generator> prefix, Generator tail, int c = 1)
{
    return PermElement(PermMonomial(std::move(prefix), tail), c);
}

PermElement E(std::string_view text) { return expand(terms::parse(text)); }

// Distinct normal forms of all words with x-multidegree m, d - 1 parameters
// and a variable as the last letter.
std::set<PermMonomial> graded_monomials_by_words(const Multidegree& m)
{
    std::vector<Generator> letters{p, q};
    for (const auto& [i, e] : m)
        letters.push_back(Generator::x(i));
    const unsigned d = perm::total_degree(m);
    const std::size_t length = 2 * d - 1;
    std::set<PermMonomial> out;
    std::vector<std::size_t> digits(length, 0);
    while (true) {
        std::vector<Generator> w;
        for (auto k : digits)
            w.push_back(letters[k]);
        Multidegree md;
        unsigned params = 0;
        for (auto g : w)
            g.is_variable() ? ++md[g.index()] : ++params;
        if (md == m && params == d - 1 && w.back().is_variable())
            out.insert(perm::normalize_word(w));
        std::size_t k = 0;
        while (k < length && ++digits[k] == letters.size())
            digits[k++] = 0;
        if (k == length)
            break;
    }
    return out;
}

std::size_t span_rank(const std::vector<PermElement>& elems)
{
    const auto index = perm::MonomialIndex::covering(elems);
    linalg::RationalMatrix m(index.size());
    for (const auto& e : elems)
        m.add_row(index.to_vector(e));
    return linalg::rank(m);
}

}  // namespace

TEST_CASE("the product on generators")
{
    const auto b = mutation_product(PermElement::x(1), PermElement::x(2));
    CHECK(b == mono({x1, p}, x2) - mono({x2, q}, x1));
    CHECK(E("<x1,x2>") == b);
    CHECK(E("<x1,x1>") == mono({x1, p}, x1) - mono({x1, q}, x1));
    CHECK(E("x1*p*x2") == mono({x1, p}, x2));
}

TEST_CASE("a degree-three expansion by hand")
{
    // <u, x3> = (u p) x3 - (x3 q) u with u = x1 p x2 - x2 q x1.
    const auto expected = mono({x1, x2, p, p}, x3) - mono({x1, x2, p, q}, x3) - mono({x1, x3, p, q}, x2) +
                          mono({x2, x3, q, q}, x1);
    CHECK(E("<<x1,x2>,x3>") == expected);
}

TEST_CASE("displayed expansions")
{
    CHECK(E("<<x1,x2>,x3>") == E("(p-q)*(p-q)*x1*x2*x3 + p*q*x1*[x2,x3] - q*q*x2*[x1,x3]"));
    CHECK(E("<x1,<x2,x3>>") == E("(p-q)*(p-q)*x1*x2*x3 + p*q*x1*[x2,x3] + p*q*x2*[x1,x3] - q*q*x2*[x1,x3]"));
    CHECK(E("<<x1,x2>,<x3,x4>>") == E("(p-q)*(p-q)*(p-q)*x1*x2*x3*x4 + (p-q)*p*q*x1*x2*[x3,x4]"
                                      " + (p-q)*p*q*x1*x3*[x2,x4] - (p-q)*q*q*x2*x3*[x1,x4]"));
}

TEST_CASE("identities of the mutation on random perm elements")
{
    std::mt19937_64 rng(23);
    const auto P = PermElement::p(), Q = PermElement::q();
    for (int t = 0; t < 60; ++t) {
        const auto a = random_element(rng, 3, 2, 3), b = random_element(rng, 3, 2, 3),
                   c = random_element(rng, 3, 2, 3);
        CHECK(mutation_product(a, b) == (a * P) * b - (b * Q) * a);
        const Assignment s{{"a", a}, {"b", b}, {"c", c}};
        CHECK(expand(terms::parse("<b,<a,c>>"), s) ==
              (a * P) * mutation_product(b, c) - (c * Q) * mutation_product(b, a));
        CHECK(expand(terms::parse("circ(a,b)"), s) == (P + Q) * commutator(a, b));
        CHECK(expand(terms::parse("<circ(a,b),circ(c,a)>"), s).is_zero());
    }
    CHECK(check_relations(5, 3).ok());
}

TEST_CASE("unknown leaves")
{
    CHECK_THROWS_AS(E("<a,x1>"), UnresolvedVariable);
    const Assignment s{{"a", PermElement::x(1) + PermElement::x(2)}};
    CHECK(expand(terms::parse("<a,x3>"), s) == E("<x1,x3> + <x2,x3>"));
}

TEST_CASE("multidegrees")
{
    const auto m = multidegrees_up_to(2, 2);
    const std::vector<Multidegree> expected{{{1, 1}}, {{2, 1}}, {{1, 2}}, {{1, 1}, {2, 1}}, {{2, 2}}};
    CHECK(std::set<Multidegree>(m.begin(), m.end()) == std::set<Multidegree>(expected.begin(), expected.end()));
    for (std::size_t i = 1; i < m.size(); ++i)
        CHECK(perm::total_degree(m[i - 1]) <= perm::total_degree(m[i]));
    CHECK(multidegrees_up_to(3, 3).size() == 3 + 6 + 10);
}

TEST_CASE("graded columns agree with word enumeration")
{
    for (const auto& m : multidegrees_up_to(3, 3)) {
        const auto cols = graded_columns(m);
        const auto brute = graded_monomials_by_words(m);
        CHECK(std::set<PermMonomial>(cols.monomials().begin(), cols.monomials().end()) == brute);
    }
}

TEST_CASE("component dimensions: recursive span, all bracket monomials and B agree")
{
    MutationSpace space;
    const auto B = enumerate_B(3, 4);
    for (const auto& m : multidegrees_up_to(3, 4)) {
        CAPTURE(perm::to_string(m));
        const auto monomials = bracket_span(m);
        const std::size_t brute = span_rank(monomials);
        CHECK(space.dimension(m) == brute);
        const auto count = std::count_if(B.begin(), B.end(), [&](const BSetElement& b) { return b.multidegree() == m; });
        CHECK(static_cast<std::size_t>(count) == brute);
        for (const auto& e : space.component(m).elements)
            for (const auto& [mono_, c] : e.terms()) {
                CHECK(mono_.multidegree() == m);
                CHECK(mono_.param_degree() + 1 == perm::total_degree(m));
            }
    }
}

TEST_CASE("B is a basis in low degree")
{
    for (unsigned n = 2; n <= 4; ++n) {
        const auto r = verify_basis_B(n, n);
        CHECK(r.ok());
        CHECK(r.failures.empty());
        CHECK(r.element_count > 0);
    }
    const auto r3 = verify_basis_B(3, 3);
    CHECK(r3.multilinear_dim == 7);
    CHECK(r3.b1_count == 9);
    CHECK(r3.b1_count_off_diagonal == 6);
}

TEST_CASE("B families")
{
    const auto all = enumerate_B(2, 2);
    const auto without = enumerate_B(2, 2, false);
    CHECK(all.size() == without.size() + 2);
    std::map<BFamily, int> counts;
    for (const auto& b : all)
        ++counts[b.family];
    CHECK(counts[BFamily::X] == 2);
    CHECK(counts[BFamily::B1] == 4);
    CHECK(to_string(BFamily::B3) == "B3");
    for (const auto& b : all) {
        CHECK_FALSE(b.label().empty());
        CHECK(is_mutation_element(b.value));
    }
    for (const auto& b : enumerate_B(3, 3))
        if (b.family == BFamily::B1 && b.indices == std::vector<std::uint32_t>{1, 2})
            CHECK(b.value == E("<x1,x2>"));
}

TEST_CASE("membership")
{
    CHECK(is_mutation_element(PermElement()));
    CHECK(is_mutation_element(E("<<x1,x2>,x3> - 2*<x3,<x1,x1>>")));
    CHECK_FALSE(is_mutation_element(mono({x1, p}, x2)));
    CHECK_FALSE(is_mutation_element(mono({p}, x1)));
    CHECK_FALSE(is_mutation_element(mono({x1}, x2)));
    CHECK_FALSE(is_mutation_element(PermElement::p()));
    // Same multidegree and grading, outside the two-dimensional span.
    CHECK_FALSE(is_mutation_element(mono({x1, p}, x2) + mono({x1, q}, x2)));
    MutationSpace space;
    CHECK(space.contains(E("<x1,x2>") + PermElement::x(3)));
    CHECK_FALSE(space.contains(E("<x1,x2>") + mono({x1}, x3)));
}
