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

#include "permmut/linalg.hpp"

#include <random>

using namespace permmut;
using namespace permmut::linalg;

namespace {

using Dense = std::vector<std::vector<Rational>>;

// Integer matrices with a tunable share of zeros.
Dense random_dense(std::mt19937_64& rng, int rows, int cols, int zero_weight = 1)
{
    std::uniform_int_distribution<int> entry(-4, 4), zero(0, zero_weight + 1);
    Dense m(rows, std::vector<Rational>(cols));
    for (auto& row : m)
        for (auto& x : row)
            x = zero(rng) < zero_weight ? 0 : entry(rng);
    return m;
}

// Fraction-free (Bareiss) elimination over the integers.
std::size_t bareiss_rank(const Dense& in)
{
    std::vector<std::vector<mpz_class>> a;
    for (const auto& row : in) {
        std::vector<mpz_class> r;
        for (const auto& x : row) {
            REQUIRE(x.get_den() == 1);
            r.push_back(x.get_num());
        }
        a.push_back(r);
    }
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    mpz_class prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[i][j] * a[rank][c] - a[i][c] * a[rank][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

SparseVector dense_row(const std::vector<Rational>& r)
{
    return SparseVector::from_dense(r);
}

}  // namespace

TEST_CASE("rationals parse in canonical form")
{
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(parse_rational("+1/3") == Rational(1, 3));
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("sparse vectors merge duplicates and drop zeros")
{
    SparseVector v({{3, 1}, {1, 2}, {3, -1}, {0, 0}});
    REQUIRE(v.nnz() == 1);
    CHECK(v.at(1) == 2);
    CHECK(v.leading_index() == std::optional<std::size_t>(1));
    CHECK(v.extent() == 2);

    SparseVector w = SparseVector::unit(1, 5) + SparseVector::unit(4, 1);
    w.axpy(Rational(-5, 2), v);
    CHECK(w.at(1) == 0);
    CHECK(w.nnz() == 1);
    CHECK(v.dot(SparseVector::unit(1, 3)) == 6);
    CHECK((Rational(2) * v).at(1) == 4);
    CHECK(SparseVector().leading_index() == std::nullopt);
}

TEST_CASE("rank agrees with fraction-free elimination on random matrices")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> size(1, 9), zeros(0, 4);
    for (int t = 0; t < 200; ++t) {
        const Dense m = random_dense(rng, size(rng), size(rng), zeros(rng));
        CHECK(rank(RationalMatrix::from_dense(m)) == bareiss_rank(m));
    }
}

TEST_CASE("rref is idempotent, normalized, and rank plus nullity is the column count")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> size(1, 8);
    for (int t = 0; t < 100; ++t) {
        const int cols = size(rng);
        const auto m = RationalMatrix::from_dense(random_dense(rng, size(rng), cols));
        const auto r = rref(m);
        CHECK(rref(r.echelon).echelon == r.echelon);
        CHECK(r.rank + kernel_basis(m).size() == static_cast<std::size_t>(cols));
        for (std::size_t i = 0; i < r.rank; ++i) {
            const auto& row = r.echelon.row(i);
            CHECK(row.leading_index() == std::optional<std::size_t>(r.pivot_columns[i]));
            CHECK(row.at(r.pivot_columns[i]) == 1);
            for (std::size_t k = 0; k < r.rank; ++k)
                if (k != i)
                    CHECK(r.echelon.row(k).at(r.pivot_columns[i]) == 0);
        }
    }
}

TEST_CASE("kernel vectors are annihilated")
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        const auto m = RationalMatrix::from_dense(random_dense(rng, 4, 7));
        for (const auto& v : kernel_basis(m))
            CHECK(m.apply(v).empty());
    }
}

TEST_CASE("solve returns solutions or certificates")
{
    std::mt19937_64 rng(17);
    int consistent = 0, inconsistent = 0;
    for (int t = 0; t < 100; ++t) {
        const auto m = RationalMatrix::from_dense(random_dense(rng, 6, 3));
        const auto rhs = dense_row(random_dense(rng, 1, 6)[0]);
        const auto result = solve(m, rhs);
        if (const auto* x = std::get_if<SparseVector>(&result)) {
            CHECK(m.apply(*x) == rhs);
            ++consistent;
        } else {
            const auto& y = std::get<Inconsistent>(result).certificate;
            CHECK(m.left_apply(y).empty());
            CHECK(y.dot(rhs) != 0);
            ++inconsistent;
        }
    }
    CHECK(inconsistent > 0);

    // Always consistent: the right-hand side is built from a known solution.
    for (int t = 0; t < 30; ++t) {
        const auto m = RationalMatrix::from_dense(random_dense(rng, 5, 5));
        const auto x0 = dense_row(random_dense(rng, 1, 5)[0]);
        const auto result = solve(m, m.apply(x0));
        REQUIRE(std::holds_alternative<SparseVector>(result));
        CHECK(m.apply(std::get<SparseVector>(result)) == m.apply(x0));
        ++consistent;
    }
    CHECK(consistent > 0);
}

TEST_CASE("in_span reports coordinates")
{
    const std::vector<SparseVector> rows{dense_row({1, 2, 0}), dense_row({0, 1, 1})};
    const auto yes = in_span(rows, dense_row({2, 7, 3}));
    CHECK(yes.member);
    CHECK(yes.coordinates == dense_row({2, 3}));
    CHECK_FALSE(in_span(rows, dense_row({0, 0, 1})).member);
    CHECK(in_span({}, SparseVector()).member);
}

TEST_CASE("echelon basis matches rref of the inserted rows")
{
    std::mt19937_64 rng(19);
    for (int t = 0; t < 50; ++t) {
        const Dense d = random_dense(rng, 7, 6);
        EchelonBasis basis(6);
        std::size_t inserted = 0;
        for (const auto& row : d)
            inserted += basis.insert(dense_row(row)) ? 1 : 0;
        const auto r = rref(RationalMatrix::from_dense(d));
        CHECK(inserted == r.rank);
        CHECK(basis.rank() == r.rank);
        CHECK(basis.rows() == r.echelon.rows());
        CHECK(basis.pivot_columns() == r.pivot_columns);
        for (const auto& row : d)
            CHECK(basis.contains(dense_row(row)));
    }
}

TEST_CASE("modular echelon ranks")
{
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> size(1, 8), zeros(0, 4);
    for (int t = 0; t < 200; ++t) {
        const Dense d = random_dense(rng, size(rng), size(rng), zeros(rng));
        const std::size_t cols = d[0].size();
        ModularEchelon big(cols), small(cols, 5);
        std::size_t accepted = 0;
        for (const auto& row : d) {
            accepted += big.insert(dense_row(row)) ? 1 : 0;
            small.insert(dense_row(row));
        }
        const std::size_t exact = bareiss_rank(d);
        CHECK(big.rank() == exact);
        CHECK(accepted == exact);
        CHECK(small.rank() <= exact);
        // A second pass adds nothing.
        for (const auto& row : d)
            CHECK_FALSE(big.insert(dense_row(row)));
    }

    ModularEchelon two(2, 2);
    CHECK_FALSE(two.insert(SparseVector::unit(0, 2)));
    CHECK(two.insert(SparseVector({{0, 3}, {1, 1}})));
    CHECK(two.rank() == 1);
    CHECK(two.insert(SparseVector::unit(1, Rational(1, 3))));
    CHECK_THROWS_AS(two.insert(SparseVector::unit(0, Rational(1, 2))), std::domain_error);
    CHECK_THROWS_AS(two.insert(SparseVector::unit(5)), std::out_of_range);
}

TEST_CASE("matrix helpers")
{
    const auto m = RationalMatrix::from_dense({{1, 2}, {3, 4}, {5, 6}});
    CHECK(m.transpose().to_dense() == Dense{{1, 3, 5}, {2, 4, 6}});
    CHECK(m.apply(dense_row({1, 1})) == dense_row({3, 7, 11}));
    CHECK(m.left_apply(dense_row({1, 0, -1})) == dense_row({-4, -4}));
    CHECK(rank(RationalMatrix::identity(4)) == 4);
    CHECK(rank(RationalMatrix(3)) == 0);
}
