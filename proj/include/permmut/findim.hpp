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

// Finite-dimensional algebras given by structure constants e_i e_j = sum_k c_ijk e_k.

#ifndef PERMMUT_FINDIM_HPP
#define PERMMUT_FINDIM_HPP

#include "permmut/linalg.hpp"
#include "permmut/terms.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace permmut::findim {

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Vector {
public:
    explicit Vector(std::size_t dim = 0) : coords_(dim) {}
    explicit Vector(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    static Vector unit(std::size_t dim, std::size_t i);

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] const std::vector<Rational>& coords() const noexcept { return coords_; }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] bool is_zero() const;

    Vector& operator+=(const Vector& o);
    Vector& operator-=(const Vector& o);
    Vector& operator*=(const Rational& c);
    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(const Rational& c, Vector a) { return a *= c; }
    friend bool operator==(const Vector&, const Vector&) = default;

    /// "-e1 + 3/2 e3" style with the given basis names; "0" for zero.
    [[nodiscard]] std::string render(const std::vector<std::string>& names) const;

private:
    std::vector<Rational> coords_;
};

class FiniteAlgebra {
public:
    /// Zero product; names default to e1..en.
    explicit FiniteAlgebra(std::size_t dim, std::vector<std::string> names = {});

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

    /// Zero-based structure constant c_ijk.
    [[nodiscard]] const Rational& at(std::size_t i, std::size_t j, std::size_t k) const;
    void set(std::size_t i, std::size_t j, std::size_t k, const Rational& c);

    [[nodiscard]] Vector multiply(const Vector& x, const Vector& y) const;
    [[nodiscard]] Vector basis(std::size_t i) const { return Vector::unit(dim_, i); }

    friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b)
    {
        return a.dim_ == b.dim_ && a.names_ == b.names_ && a.table_ == b.table_;
    }

private:
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const;
    std::size_t dim_;
    std::vector<std::string> names_;
    std::vector<Rational> table_;
};

struct MutationParams {
    Vector p;
    Vector q;
};

using VectorAssignment = std::map<std::string, Vector>;

class MissingParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Product nodes use the algebra's product. Bracket nodes use
/// (x p) y - (y q) x when params are given; a polynomial made of bracket
/// nodes only and evaluated without params reads <,> as the algebra's own
/// product. Mixing both kinds requires params.
Vector evaluate(const FiniteAlgebra& a, const terms::BracketPolynomial& poly, const VectorAssignment& assignment,
                const std::optional<MutationParams>& params = std::nullopt);

struct Witness {
    std::vector<std::string> variables;
    std::vector<std::size_t> basis_indices;  // zero-based, one per variable
    Vector value;

    /// "(e1,e1,e3) -> -e1"
    [[nodiscard]] std::string render(const FiniteAlgebra& a) const;
};

struct CheckResult {
    bool holds = true;
    std::optional<Witness> witness;
};

/// Evaluates the full linearization on every tuple of basis vectors, in
/// lexicographic order, and reports the first nonzero value.
CheckResult satisfies(const FiniteAlgebra& a, const terms::BracketPolynomial& poly,
                      const std::optional<MutationParams>& params = std::nullopt);
CheckResult satisfies(const FiniteAlgebra& a, const terms::IdentityTemplate& t,
                      const std::optional<MutationParams>& params = std::nullopt);

/// Structure constants of <x,y> = (x p) y - (y q) x.
FiniteAlgebra mutation_algebra(const FiniteAlgebra& a, const Vector& p, const Vector& q);

/// The linearized condition under which every mutation is Lie-admissible.
CheckResult lie_admissible_criterion(const FiniteAlgebra& a);
/// Jacobi identity for the commutator of the algebra's product on basis triples.
CheckResult jacobi_test(const FiniteAlgebra& a);
CheckResult is_bicommutative(const FiniteAlgebra& a);

/// e1 e2 = e1, e2 e1 = -e1, e3 e1 = e2, all other products zero.
FiniteAlgebra f_not_wa_algebra();

struct JacobiFailure {
    Vector p;
    Vector q;
    Witness witness;
};

/// Searches random (p, q) with coordinates in [-2, 2] for a mutation that is
/// not Lie-admissible.
std::optional<JacobiFailure> falsify_lie_admissibility(const FiniteAlgebra& a, std::mt19937_64& rng,
                                                       unsigned attempts);

// ---------------------------------------------------------------------------
// File format: { "dim": n, "names": [...], "table": [[i, j, k, "c"], ...] },
// 1-based indices, rational strings, omitted entries zero. An optional
// "comment" string is accepted and ignored.

class AlgebraFormatError : public std::runtime_error {
public:
    AlgebraFormatError(const std::string& message, std::size_t line);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

FiniteAlgebra parse_algebra(std::string_view text);
FiniteAlgebra load_algebra(const std::filesystem::path& path);
/// Nonzero entries only, sorted by (i, j, k), one per line.
std::string serialize_algebra(const FiniteAlgebra& a);

// ---------------------------------------------------------------------------
// Sample algebras.

Vector random_vector(std::mt19937_64& rng, std::size_t dim, int lo = -2, int hi = 2);
FiniteAlgebra random_algebra(std::mt19937_64& rng, std::size_t dim, int lo = -2, int hi = 2);

/// t, t^2, ..., t^n with t^(n+1) = 0.
FiniteAlgebra truncated_polynomial(std::size_t n);
/// Upper triangular 2 x 2 matrices, basis E11, E12, E22.
FiniteAlgebra upper_triangular2();
/// All 2 x 2 matrices, basis E11, E12, E21, E22.
FiniteAlgebra matrix_algebra2();
/// Same algebra in a random basis f_i = sum_k T_ik e_k with T invertible.
FiniteAlgebra random_isomorph(const FiniteAlgebra& a, std::mt19937_64& rng);
/// Rejection-sampled sparse 0/1 table that is bicommutative.
FiniteAlgebra random_bicommutative(std::mt19937_64& rng, std::size_t dim);
/// Algebras satisfying the Lie-admissibility criterion: isomorphic copies of
/// associative algebras and bicommutative samples, each checked before use.
std::vector<FiniteAlgebra> criterion_samples(std::mt19937_64& rng, std::size_t count);

}  // namespace permmut::findim

#endif  // PERMMUT_FINDIM_HPP
