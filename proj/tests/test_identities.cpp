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

#include "permmut/identities.hpp"
#include "permmut/mutation.hpp"

#include <algorithm>
#include <numeric>

using namespace permmut;
using namespace permmut::identities;
using terms::parse;

namespace {

const terms::TemplateRegistry& reg() { return terms::TemplateRegistry::builtin(); }

std::vector<terms::IdentityTemplate> lookup(std::initializer_list<const char*> names)
{
    std::vector<terms::IdentityTemplate> out;
    for (const char* n : names)
        out.push_back(reg().at(n));
    return out;
}

std::vector<SparseVector> rref_rows(const std::vector<SparseVector>& rows, std::size_t cols)
{
    return linalg::rref(linalg::RationalMatrix(rows, cols)).echelon.rows();
}

BracketPolynomial var(int i) { return BracketPolynomial::variable("x" + std::to_string(i)); }

// Every multilinear degree-4 consequence of identities of degree 3 and 4,
// built by substituting and multiplying directly.
std::vector<SparseVector> degree4_lift(const std::vector<terms::IdentityTemplate>& ids)
{
    const MagmaticBasis basis(4);
    std::vector<SparseVector> rows;
    std::array<int, 4> pi{1, 2, 3, 4};
    do {
        const auto a = var(pi[0]), b = var(pi[1]), c = var(pi[2]), d = var(pi[3]);
        for (const auto& t : ids) {
            if (t.arity() == 4) {
                const std::vector<BracketPolynomial> args{a, b, c, d};
                rows.push_back(basis.to_vector(terms::instantiate(t, args)));
                continue;
            }
            const auto ab = terms::bracket(a, b);
            for (const auto& args : {std::vector{ab, c, d}, std::vector{c, ab, d}, std::vector{c, d, ab}})
                rows.push_back(basis.to_vector(terms::instantiate(t, args)));
            const std::vector<BracketPolynomial> three{a, b, c};
            const auto phi = terms::instantiate(t, three);
            rows.push_back(basis.to_vector(terms::bracket(phi, d)));
            rows.push_back(basis.to_vector(terms::bracket(d, phi)));
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
    return rref_rows(rows, basis.size());
}

std::size_t hook_dimension(const Partition& lambda)
{
    const unsigned n = std::accumulate(lambda.begin(), lambda.end(), 0u);
    std::size_t hooks = 1;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (unsigned j = 0; j < lambda[i]; ++j) {
            unsigned below = 0;
            for (std::size_t k = i + 1; k < lambda.size() && lambda[k] > j; ++k)
                ++below;
            hooks *= lambda[i] - j - 1 + below + 1;
        }
    return factorial(n) / hooks;
}

// Size of the centralizer of an element of cycle type mu.
long long centralizer(const Partition& mu)
{
    long long z = 1;
    std::map<unsigned, unsigned> mult;
    for (auto part : mu)
        ++mult[part];
    for (auto [part, m] : mult)
        for (unsigned k = 1; k <= m; ++k)
            z *= static_cast<long long>(part) * k;
    return z;
}

}  // namespace

TEST_CASE("counts")
{
    const std::size_t cat[] = {1, 1, 2, 5, 14, 42, 132};
    for (unsigned k = 0; k < 7; ++k)
        CHECK(catalan(k) == cat[k]);
    CHECK(factorial(0) == 1);
    CHECK(factorial(6) == 720);
    for (unsigned n = 1; n <= 5; ++n) {
        const MagmaticBasis b(n);
        CHECK(b.size() == factorial(n) * catalan(n - 1));
        CHECK(b.shape_count() == catalan(n - 1));
    }
    CHECK_THROWS_AS(MagmaticBasis(7), LimitExceeded);
    CHECK_NOTHROW(MagmaticBasis(2, MagmaticOrder::Canonical, 2));
    CHECK_THROWS_AS(MagmaticBasis(3, MagmaticOrder::Canonical, 2), LimitExceeded);
}

TEST_CASE("codes and terms")
{
    const MagmaticBasis b(4);
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(code_of(term_of(b.code(i))) == b.code(i));
        CHECK(b.index(b.code(i)) == std::optional<std::size_t>(i));
        CHECK(parse(b.label(i)) == BracketPolynomial(b.term(i)));
        CHECK(b.to_vector(BracketPolynomial(b.term(i))) == SparseVector::unit(i));
    }
    const std::uint8_t sigma[] = {3, 1, 2};
    CHECK(relabel(code_of(parse("<<x1,x2>,x3>").terms().begin()->first), sigma) ==
          code_of(parse("<<x3,x1>,x2>").terms().begin()->first));
    const auto poly = parse("<<x1,x2>,x3> - 2*<x3,<x2,x1>>");
    const MagmaticBasis b3(3);
    CHECK(b3.to_polynomial(b3.to_vector(poly)) == poly);
    CHECK_THROWS_AS((void)b3.to_vector(parse("<x1,x1>")), std::invalid_argument);
    CHECK_THROWS_AS((void)b3.to_vector(parse("(x1*x2)*x3")), std::invalid_argument);
    CHECK(b3.to_vector(parse("(x1*x2)*x3"), NodeKind::Product).nnz() == 1);
}

TEST_CASE("canonical order: shapes by left size, then permutations")
{
    const MagmaticBasis b(3);
    CHECK(b.label(0) == "<x1,<x2,x3>>");
    CHECK(b.label(1) == "<x1,<x3,x2>>");
    CHECK(b.label(6) == "<<x1,x2>,x3>");
    CHECK(b.label(11) == "<<x3,x2>,x1>");
}

TEST_CASE("reference order in degree three")
{
    const MagmaticBasis r(3, MagmaticOrder::Reference);
    const char* expected[] = {"a(bc)", "a(cb)", "b(ac)", "b(ca)", "c(ab)", "c(ba)",
                              "(ab)c", "(ac)b", "(ba)c", "(bc)a", "(ca)b", "(cb)a"};
    REQUIRE(r.size() == 12);
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(r.letter_label(i) == expected[i]);
    CHECK_THROWS_AS(MagmaticBasis(4, MagmaticOrder::Reference), std::invalid_argument);
    // In degree 3 the listing coincides with the canonical order.
    const MagmaticBasis c(3);
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(r.code(i) == c.code(i));
}

TEST_CASE("standard form")
{
    const auto s = standard_form(parse("<<<x,x>,y>,x> - <<x,x>,<y,x>>"));
    CHECK(s.is_multilinear());
    CHECK(s.variables() == std::set<std::string>{"x1", "x2", "x3", "x4"});
    CHECK(s.size() == 12);
    CHECK(standard_form(parse("<b,a>")) == parse("<x2,x1>"));

    // The standard Jordan identity vanishes after linearization; this
    // rearrangement of it does not.
    CHECK(mutation::expand(s).is_zero());
    CHECK_FALSE(mutation::expand(standard_form(parse("<<x,x>,<y,x>> - <x,<<x,y>,x>>"))).is_zero());
}

TEST_CASE("expansion ranks equal the multilinear mutation dimensions")
{
    mutation::MutationSpace space;
    const std::size_t ranks[] = {0, 1, 2, 7, 13};
    for (unsigned n = 1; n <= 4; ++n) {
        const auto m = expansion_matrix(n);
        const std::size_t r = linalg::rank(m);
        CHECK(r == ranks[n]);
        perm::Multidegree md;
        for (unsigned i = 1; i <= n; ++i)
            md[i] = 1;
        CHECK(r == space.dimension(md));
        CHECK(m.col_count() == expansion_columns(n).size());
        CHECK(identity_kernel_vectors(n).size() == MagmaticBasis(n).size() - r);
    }
}

TEST_CASE("kernel polynomials expand to zero")
{
    for (unsigned n = 2; n <= 4; ++n)
        for (const auto& poly : identity_kernel(n))
            CHECK(mutation::expand(poly).is_zero());
    CHECK(identity_kernel(3).size() == 5);
}

TEST_CASE("the reference degree-three matrix")
{
    const auto ref = reference_degree3_matrix();
    CHECK(ref.row_count() == 12);
    CHECK(ref.col_count() == 12);
    CHECK(linalg::rank(ref) == 5);
    const auto ours = degree3_identity_rows();
    CHECK(rref_rows(ref.rows(), 12) == rref_rows(ours.rows(), 12));
    // The reference columns list the same monomials, so its row space is the
    // kernel once reordered.
    CHECK(linalg::rank(expansion_matrix(3, MagmaticOrder::Reference)) == 7);
    const auto exp_ref = expansion_matrix(3, MagmaticOrder::Reference);
    for (const auto& row : ref.rows())
        CHECK(exp_ref.left_apply(row).empty());
}

TEST_CASE("characters of S4 and S5")
{
    // Classes (1111), (211), (22), (31), (4).
    const std::vector<Partition> classes{{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {3, 1}, {4}};
    const std::vector<std::pair<Partition, std::vector<long long>>> table{
        {{4}, {1, 1, 1, 1, 1}},
        {{3, 1}, {3, 1, -1, 0, -1}},
        {{2, 2}, {2, 0, 2, -1, 0}},
        {{2, 1, 1}, {3, -1, -1, 0, 1}},
        {{1, 1, 1, 1}, {1, -1, 1, 1, -1}},
    };
    for (const auto& [lambda, row] : table)
        for (std::size_t k = 0; k < classes.size(); ++k)
            CHECK(sn_character(lambda, classes[k]) == row[k]);

    CHECK(partitions(4) == std::vector<Partition>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
    for (unsigned n = 1; n <= 7; ++n) {
        const auto parts = partitions(n);
        const Partition identity(n, 1);
        std::size_t squares = 0;
        for (const auto& lambda : parts) {
            const auto dim = sn_character(lambda, identity);
            CHECK(static_cast<std::size_t>(dim) == hook_dimension(lambda));
            squares += static_cast<std::size_t>(dim * dim);
        }
        CHECK(squares == factorial(n));
    }
    // Row orthogonality: sum over classes of chi chi' / z = delta.
    for (unsigned n : {5u, 6u}) {
        const auto parts = partitions(n);
        for (const auto& a : parts)
            for (const auto& b : parts) {
                Rational s = 0;
                for (const auto& mu : parts) {
                    Rational term(static_cast<long>(sn_character(a, mu) * sn_character(b, mu)),
                                  static_cast<unsigned long>(centralizer(mu)));
                    term.canonicalize();
                    s += term;
                }
                CHECK(s == (a == b ? 1 : 0));
            }
    }
}

TEST_CASE("consequences in degree three")
{
    const auto known = lookup({"f", "wa"});
    const auto cons = consequence_span(known, 3);
    CHECK(cons.size() == 5);
    CHECK(cons == rref_rows(identity_kernel_vectors(3), 12));
    CHECK(tideal_membership(terms::instantiate_standard(reg().at("ftilde")), known));
    CHECK(tideal_membership(terms::instantiate_standard(reg().at("flex")), known));
    CHECK(tideal_membership(parse("wa(x1,x2,x3) + f(x3,x1,x2)"), known));
    CHECK_FALSE(tideal_membership(parse("<<x1,x2>,x3>"), known));
    CHECK(consequence_span(lookup({"f"}), 3).size() == 1);
}

TEST_CASE("degree-four consequences agree with a direct lift")
{
    for (const auto& names : {std::vector<const char*>{"f", "wa"}, std::vector<const char*>{"f", "wa", "hbar", "ibar"}}) {
        std::vector<terms::IdentityTemplate> ids;
        for (const char* n : names)
            ids.push_back(reg().at(n));
        const auto ours = consequence_span(ids, 4);
        const auto direct = degree4_lift(ids);
        CHECK(ours == direct);
        CHECK(ours.size() == (names.size() == 2 ? 88u : 92u));
    }
}

TEST_CASE("modular consequence rank")
{
    for (const auto& names : {std::vector<const char*>{"f", "wa"}, std::vector<const char*>{"f", "wa", "hbar", "ibar"}}) {
        std::vector<BracketPolynomial> polys;
        for (const char* n : names)
            polys.push_back(terms::instantiate_standard(reg().at(n)));
        const auto exact = consequence_span(polys, 4);
        const auto mod = consequence_rank_modular(polys, 4);
        CHECK(mod.rank == exact.size());
        CHECK(mod.generators.size() == mod.rank);
        CHECK(mod.prime == linalg::ModularEchelon::kDefaultPrime);
        linalg::EchelonBasis span(MagmaticBasis(4).size());
        for (const auto& r : exact)
            span.insert(r);
        linalg::EchelonBasis generated(span.cols());
        for (const auto& g : mod.generators) {
            CHECK(span.contains(g));
            generated.insert(g);
        }
        CHECK(generated.rank() == exact.size());
    }
}

TEST_CASE("new identities")
{
    const auto r3 = new_identities(lookup({"f", "wa"}), 3);
    CHECK(r3.magmatic_count == 12);
    CHECK(r3.expansion_rank == 7);
    CHECK(r3.kernel_dim == 5);
    CHECK(r3.consequence_dim == 5);
    CHECK(r3.new_dim == 0);
    CHECK(r3.new_generators == 0);
    CHECK(r3.consequences_in_kernel);

    const auto r4 = new_identities(lookup({"f", "wa", "hbar", "ibar"}), 4);
    CHECK(r4.kernel_dim == 107);
    CHECK(r4.consequence_dim == 92);
    CHECK(r4.new_dim == 15);
    CHECK(r4.new_generators == 2);
    CHECK(r4.decomposition.min_generators == r4.new_generators);
    std::size_t total = 0;
    for (std::size_t i = 0; i < r4.decomposition.partitions.size(); ++i) {
        CHECK(r4.decomposition.irreducible_dims[i] == hook_dimension(r4.decomposition.partitions[i]));
        total += r4.decomposition.multiplicities[i] * r4.decomposition.irreducible_dims[i];
    }
    CHECK(total == r4.new_dim);
    CHECK_FALSE(r4.representatives.empty());
    for (const auto& rep : r4.representatives)
        CHECK(mutation::expand(rep).is_zero());

    const auto full = new_identities(lookup({"f", "wa", "hbar", "ibar", "conj4a", "conj4b"}), 4);
    CHECK(full.new_dim == 0);
}

TEST_CASE("non-identities are rejected")
{
    terms::TemplateRegistry r = reg();
    r.define("bad", {"a", "b", "c"}, "<<a,b>,c>");
    const std::vector<terms::IdentityTemplate> known{r.at("f"), r.at("bad")};
    try {
        new_identities(known, 3);
        FAIL("expected NotAnIdentity");
    } catch (const NotAnIdentity& e) {
        CHECK(e.name() == "bad");
        CHECK(e.witness() == mutation::expand(parse("<<x1,x2>,x3>")));
    }
}

TEST_CASE("product-kind membership")
{
    const auto bicomm = lookup({"bicomm_right", "bicomm_left"});
    CHECK(tideal_membership(parse("bicomm_right(x2,x1,x3)"), bicomm));
    CHECK(tideal_membership(parse("x1*(x2*x3) - x2*(x1*x3)"), bicomm));
    CHECK_FALSE(tideal_membership(parse("(x1*x2)*x3 - (x2*x1)*x3"), bicomm));
    CHECK_THROWS_AS(tideal_membership(parse("(x1*x2)*x3 - <<x1,x2>,x3>"), bicomm), std::invalid_argument);
}
