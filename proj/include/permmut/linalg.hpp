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

#ifndef PERMMUT_LINALG_HPP
#define PERMMUT_LINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace permmut {

/// Exact rational scalar. Always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

/// Parses "n" or "n/d" (optional leading sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

}  // namespace permmut

namespace permmut::linalg {

/// Sparse vector over an ordered index set. Entries are sorted by index and
/// never hold a zero coefficient.
class SparseVector {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVector() = default;
    /// Accepts entries in any order; duplicates are summed and zeros dropped.
    explicit SparseVector(std::vector<Entry> entries);

    static SparseVector unit(std::size_t index, const Rational& value = 1);
    static SparseVector from_dense(std::span<const Rational> coords);

    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t nnz() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
    [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
    [[nodiscard]] auto end() const noexcept { return entries_.end(); }

    [[nodiscard]] Rational at(std::size_t index) const;
    [[nodiscard]] const Rational* find(std::size_t index) const;
    [[nodiscard]] std::optional<std::size_t> leading_index() const;
    /// One past the largest stored index (0 for the zero vector).
    [[nodiscard]] std::size_t extent() const;

    void scale(const Rational& factor);
    /// this += factor * other
    void axpy(const Rational& factor, const SparseVector& other);
    [[nodiscard]] Rational dot(const SparseVector& other) const;
    [[nodiscard]] std::vector<Rational> to_dense(std::size_t length) const;

    SparseVector& operator+=(const SparseVector& other);
    SparseVector& operator-=(const SparseVector& other);
    friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
    friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
    friend SparseVector operator*(const Rational& c, SparseVector v)
    {
        v.scale(c);
        return v;
    }
    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    std::vector<Entry> entries_;
};

std::string to_string(const SparseVector& v);

/// Row-major sparse matrix with a fixed column count and optional column labels.
class RationalMatrix {
public:
    explicit RationalMatrix(std::size_t cols = 0, std::vector<std::string> labels = {});
    RationalMatrix(std::vector<SparseVector> rows, std::size_t cols,
                   std::vector<std::string> labels = {});

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

    void add_row(SparseVector row);

    [[nodiscard]] std::size_t row_count() const noexcept { return rows_.size(); }
    [[nodiscard]] std::size_t col_count() const noexcept { return cols_; }
    [[nodiscard]] const std::vector<SparseVector>& rows() const noexcept { return rows_; }
    [[nodiscard]] const SparseVector& row(std::size_t i) const { return rows_.at(i); }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] Rational at(std::size_t r, std::size_t c) const { return rows_.at(r).at(c); }

    [[nodiscard]] RationalMatrix transpose() const;
    /// m * x, x indexed by columns.
    [[nodiscard]] SparseVector apply(const SparseVector& x) const;
    /// y^T * m, y indexed by rows.
    [[nodiscard]] SparseVector left_apply(const SparseVector& y) const;
    [[nodiscard]] std::vector<std::vector<Rational>> to_dense() const;

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b)
    {
        return a.cols_ == b.cols_ && a.rows_ == b.rows_;
    }

private:
    std::size_t cols_;
    std::vector<SparseVector> rows_;
    std::vector<std::string> labels_;
};

struct RrefResult {
    RationalMatrix echelon;  // nonzero rows only, pivots equal to 1
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form. Pivot choice: earliest column holding a nonzero
/// entry, then the candidate row with the smallest |pivot| (lowest row index
/// on ties).
RrefResult rref(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Basis of {v : m v = 0}: one vector per free column f with v[f] = 1 and
/// zeros on the other free columns.
std::vector<SparseVector> kernel_basis(const RationalMatrix& m);

/// Returned by solve() when m x = rhs has no solution. The certificate y
/// satisfies y^T m = 0 and y . rhs != 0.
struct Inconsistent {
    SparseVector certificate;
};
using SolveResult = std::variant<SparseVector, Inconsistent>;

/// Solves m x = rhs exactly. Free variables are set to zero.
SolveResult solve(const RationalMatrix& m, const SparseVector& rhs);

struct SpanMembership {
    bool member = false;
    SparseVector coordinates;  // v == sum coordinates[i] * rows[i] when member
};
SpanMembership in_span(std::span<const SparseVector> rows, const SparseVector& v);

/// Incrementally maintained, fully reduced row echelon basis of a subspace.
///
/// Every stored row has a unit pivot and is zero on all other pivot columns,
/// so reducing a vector is a single pass over its entries. Not thread-safe:
/// reduction reuses an internal workspace.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t cols);

    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }

    /// Remainder of v modulo the span; supported on non-pivot columns only.
    [[nodiscard]] SparseVector reduce(const SparseVector& v) const;
    [[nodiscard]] bool contains(const SparseVector& v) const { return reduce(v).empty(); }
    /// Returns true when v was independent of the current span.
    bool insert(const SparseVector& v);

    /// Rows in pivot order; together they are the unique RREF of the span.
    [[nodiscard]] std::vector<SparseVector> rows() const;
    [[nodiscard]] std::vector<std::size_t> pivot_columns() const;

private:
    std::size_t cols_;
    std::vector<SparseVector> rows_;
    std::vector<std::int64_t> pivot_row_;              // column -> row, or -1
    std::vector<std::vector<std::uint32_t>> occurs_;  // column -> rows that may touch it
    mutable std::vector<Rational> work_;
    mutable std::vector<char> touched_;
};

/// The same reduced echelon form over Z/p, for rank bounds on large systems.
/// Since rank over Z/p never exceeds rank over Q, reaching a known upper
/// bound here proves the rational rank.
class ModularEchelon {
public:
    static constexpr std::uint32_t kDefaultPrime = 2147483647u;

    explicit ModularEchelon(std::size_t cols, std::uint32_t prime = kDefaultPrime);

    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }
    [[nodiscard]] std::uint32_t prime() const noexcept { return p_; }

    /// Returns true when v was independent mod p. Throws std::domain_error
    /// when a denominator of v vanishes mod p.
    bool insert(const SparseVector& v);

private:
    using Row = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

    [[nodiscard]] std::uint32_t residue(const Rational& x) const;
    [[nodiscard]] std::uint32_t inverse(std::uint32_t a) const;
    [[nodiscard]] Row reduce(const SparseVector& v) const;

    std::size_t cols_;
    std::uint32_t p_;
    std::vector<Row> rows_;
    std::vector<std::int64_t> pivot_row_;
    std::vector<std::vector<std::uint32_t>> occurs_;
    mutable std::vector<std::uint64_t> work_;
    mutable std::vector<char> touched_;
};

}  // namespace permmut::linalg

#endif  // PERMMUT_LINALG_HPP
