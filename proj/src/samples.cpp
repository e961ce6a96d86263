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

#include "permmut/findim.hpp"

namespace permmut::findim {

namespace {

int draw(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

Vector random_vector(std::mt19937_64& rng, std::size_t dim, int lo, int hi)
{
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i)
        v[i] = draw(rng, lo, hi);
    return v;
}

FiniteAlgebra random_algebra(std::mt19937_64& rng, std::size_t dim, int lo, int hi)
{
    FiniteAlgebra a(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k)
                a.set(i, j, k, draw(rng, lo, hi));
    return a;
}

FiniteAlgebra truncated_polynomial(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i)
        names.push_back(i == 1 ? "t" : "t" + std::to_string(i));
    FiniteAlgebra a(n, names);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j + 1 < n; ++j)
            a.set(i, j, i + j + 1, 1);
    return a;
}

namespace {

// Matrix units E_rc of the listed positions, multiplied as matrices.
FiniteAlgebra matrix_units(const std::vector<std::pair<int, int>>& units)
{
    std::vector<std::string> names;
    for (auto [r, c] : units)
        names.push_back("E" + std::to_string(r) + std::to_string(c));
    FiniteAlgebra a(units.size(), names);
    for (std::size_t i = 0; i < units.size(); ++i)
        for (std::size_t j = 0; j < units.size(); ++j) {
            if (units[i].second != units[j].first)
                continue;
            const std::pair<int, int> prod{units[i].first, units[j].second};
            for (std::size_t k = 0; k < units.size(); ++k)
                if (units[k] == prod)
                    a.set(i, j, k, 1);
        }
    return a;
}

}  // namespace

FiniteAlgebra upper_triangular2()
{
    return matrix_units({{1, 1}, {1, 2}, {2, 2}});
}

FiniteAlgebra matrix_algebra2()
{
    return matrix_units({{1, 1}, {1, 2}, {2, 1}, {2, 2}});
}

FiniteAlgebra random_isomorph(const FiniteAlgebra& a, std::mt19937_64& rng)
{
    const std::size_t n = a.dim();
    std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n));
    while (true) {
        for (auto& row : t)
            for (auto& x : row)
                x = draw(rng, -2, 2);
        if (linalg::rank(linalg::RationalMatrix::from_dense(t)) == n)
            break;
    }
    // Column l of T^{-1} solves T x = e_l; e_k = sum_l (T^{-1})_kl f_l.
    const auto tm = linalg::RationalMatrix::from_dense(t);
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t l = 0; l < n; ++l) {
        const auto x = std::get<linalg::SparseVector>(linalg::solve(tm, linalg::SparseVector::unit(l)));
        for (const auto& [k, c] : x)
            inv[k][l] = c;
    }
    std::vector<Vector> f;
    for (std::size_t i = 0; i < n; ++i)
        f.emplace_back(t[i]);
    FiniteAlgebra out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector prod = a.multiply(f[i], f[j]);
            for (std::size_t l = 0; l < n; ++l) {
                Rational c;
                for (std::size_t k = 0; k < n; ++k)
                    if (prod[k] != 0)
                        c += prod[k] * inv[k][l];
                if (c != 0)
                    out.set(i, j, l, c);
            }
        }
    return out;
}

FiniteAlgebra random_bicommutative(std::mt19937_64& rng, std::size_t dim)
{
    // Strictly increasing supports (e_i e_j in span of e_k, k > max(i, j))
    // keep the algebra nilpotent, which makes acceptance likely.
    for (int attempt = 0; attempt < 10000; ++attempt) {
        FiniteAlgebra a(dim);
        bool any = false;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                for (std::size_t k = std::max(i, j) + 1; k < dim; ++k)
                    if (draw(rng, 0, 2) == 0) {
                        a.set(i, j, k, 1);
                        any = true;
                    }
        if (any && is_bicommutative(a).holds)
            return a;
    }
    // e1 e1 = e2 is always bicommutative.
    FiniteAlgebra a(dim);
    if (dim > 1)
        a.set(0, 0, 1, 1);
    return a;
}

std::vector<FiniteAlgebra> criterion_samples(std::mt19937_64& rng, std::size_t count)
{
    std::vector<FiniteAlgebra> out;
    for (std::size_t s = 0; s < count; ++s) {
        FiniteAlgebra base(1);
        switch (s % 4) {
        case 0:
            base = truncated_polynomial(3);
            break;
        case 1:
            base = upper_triangular2();
            break;
        case 2:
            base = matrix_algebra2();
            break;
        default:
            base = random_bicommutative(rng, 3);
            break;
        }
        FiniteAlgebra a = random_isomorph(base, rng);
        if (!lie_admissible_criterion(a).holds)
            throw std::logic_error("sample algebra violates the Lie-admissibility criterion");
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace permmut::findim
