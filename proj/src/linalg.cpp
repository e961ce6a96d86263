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

#include "permmut/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace permmut {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r)
{
    return r.get_str();
}

}  // namespace permmut

namespace permmut::linalg {

SparseVector::SparseVector(std::vector<Entry> entries)
{
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& [idx, val] : entries) {
        if (!entries_.empty() && entries_.back().first == idx)
            entries_.back().second += val;
        else
            entries_.emplace_back(idx, std::move(val));
    }
    std::erase_if(entries_, [](const Entry& e) { return e.second == 0; });
}

SparseVector SparseVector::unit(std::size_t index, const Rational& value)
{
    SparseVector v;
    if (value != 0)
        v.entries_.emplace_back(index, value);
    return v;
}

SparseVector SparseVector::from_dense(std::span<const Rational> coords)
{
    SparseVector v;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0)
            v.entries_.emplace_back(i, coords[i]);
    return v;
}

const Rational* SparseVector::find(std::size_t index) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it == entries_.end() || it->first != index)
        return nullptr;
    return &it->second;
}

Rational SparseVector::at(std::size_t index) const
{
    const Rational* r = find(index);
    return r ? *r : Rational(0);
}

std::optional<std::size_t> SparseVector::leading_index() const
{
    if (entries_.empty())
        return std::nullopt;
    return entries_.front().first;
}

std::size_t SparseVector::extent() const
{
    return entries_.empty() ? 0 : entries_.back().first + 1;
}

void SparseVector::scale(const Rational& factor)
{
    if (factor == 0) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_)
        e.second *= factor;
}

void SparseVector::axpy(const Rational& factor, const SparseVector& other)
{
    if (factor == 0 || other.empty())
        return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.push_back(std::move(*a));
            ++a;
        } else if (a == entries_.end() || b->first < a->first) {
            out.emplace_back(b->first, factor * b->second);
            ++b;
        } else {
            Rational s = a->second + factor * b->second;
            if (s != 0)
                out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

Rational SparseVector::dot(const SparseVector& other) const
{
    Rational acc = 0;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
        if (a->first < b->first)
            ++a;
        else if (b->first < a->first)
            ++b;
        else {
            acc += a->second * b->second;
            ++a;
            ++b;
        }
    }
    return acc;
}

std::vector<Rational> SparseVector::to_dense(std::size_t length) const
{
    std::vector<Rational> out(length);
    for (const auto& [i, v] : entries_) {
        if (i >= length)
            throw std::out_of_range("SparseVector::to_dense: index beyond length");
        out[i] = v;
    }
    return out;
}

SparseVector& SparseVector::operator+=(const SparseVector& other)
{
    axpy(1, other);
    return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& other)
{
    axpy(-1, other);
    return *this;
}

std::string to_string(const SparseVector& v)
{
    std::string out = "{";
    bool first = true;
    for (const auto& [i, c] : v) {
        if (!first)
            out += ", ";
        first = false;
        out += std::to_string(i) + ": " + c.get_str();
    }
    return out + "}";
}

// ---------------------------------------------------------------------------

RationalMatrix::RationalMatrix(std::size_t cols, std::vector<std::string> labels)
    : cols_(cols), labels_(std::move(labels))
{
    if (!labels_.empty() && labels_.size() != cols_)
        throw std::invalid_argument("RationalMatrix: label count does not match column count");
}

RationalMatrix::RationalMatrix(std::vector<SparseVector> rows, std::size_t cols, std::vector<std::string> labels)
    : RationalMatrix(cols, std::move(labels))
{
    rows_.reserve(rows.size());
    for (auto& r : rows)
        add_row(std::move(r));
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m.add_row(SparseVector::unit(i));
    return m;
}

RationalMatrix RationalMatrix::from_dense(const std::vector<std::vector<Rational>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(cols);
    for (const auto& r : rows) {
        if (r.size() != cols)
            throw std::invalid_argument("RationalMatrix::from_dense: ragged rows");
        m.add_row(SparseVector::from_dense(r));
    }
    return m;
}

void RationalMatrix::add_row(SparseVector row)
{
    if (row.extent() > cols_)
        throw std::out_of_range("RationalMatrix: row index outside the column basis");
    rows_.push_back(std::move(row));
}

RationalMatrix RationalMatrix::transpose() const
{
    std::vector<std::vector<SparseVector::Entry>> cols(cols_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r])
            cols[c].emplace_back(r, v);
    RationalMatrix t(rows_.size());
    for (auto& c : cols)
        t.add_row(SparseVector(std::move(c)));
    return t;
}

SparseVector RationalMatrix::apply(const SparseVector& x) const
{
    std::vector<SparseVector::Entry> out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rational d = rows_[r].dot(x);
        if (d != 0)
            out.emplace_back(r, std::move(d));
    }
    return SparseVector(std::move(out));
}

SparseVector RationalMatrix::left_apply(const SparseVector& y) const
{
    SparseVector acc;
    for (const auto& [r, c] : y) {
        if (r >= rows_.size())
            throw std::out_of_range("RationalMatrix::left_apply: index beyond row count");
        acc.axpy(c, rows_[r]);
    }
    return acc;
}

std::vector<std::vector<Rational>> RationalMatrix::to_dense() const
{
    std::vector<std::vector<Rational>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_)
        out.push_back(r.to_dense(cols_));
    return out;
}

// ---------------------------------------------------------------------------

RrefResult rref(const RationalMatrix& m)
{
    std::vector<SparseVector> work;
    work.reserve(m.row_count());
    // leading column -> rows currently led by it, in original row order
    std::map<std::size_t, std::vector<std::size_t>> buckets;
    for (const auto& r : m.rows()) {
        if (r.empty())
            continue;
        buckets[*r.leading_index()].push_back(work.size());
        work.push_back(r);
    }

    std::vector<SparseVector> pivots;
    std::vector<std::size_t> pivot_cols;
    while (!buckets.empty()) {
        auto node = buckets.extract(buckets.begin());
        const std::size_t col = node.key();
        std::vector<std::size_t>& cand = node.mapped();
        std::sort(cand.begin(), cand.end());

        std::size_t best = cand.front();
        for (std::size_t idx : cand)
            if (cmp(abs(work[idx].entries().front().second), abs(work[best].entries().front().second)) < 0)
                best = idx;

        SparseVector pivot = std::move(work[best]);
        pivot.scale(1 / pivot.entries().front().second);
        for (std::size_t idx : cand) {
            if (idx == best)
                continue;
            SparseVector& row = work[idx];
            row.axpy(-row.entries().front().second, pivot);
            if (!row.empty())
                buckets[*row.leading_index()].push_back(idx);
        }
        pivots.push_back(std::move(pivot));
        pivot_cols.push_back(col);
    }

    // Back substitution: clear each pivot column above its pivot.
    for (std::size_t i = pivots.size(); i-- > 0;) {
        for (std::size_t j = 0; j < i; ++j) {
            if (const Rational* c = pivots[j].find(pivot_cols[i])) {
                Rational f = -*c;
                pivots[j].axpy(f, pivots[i]);
            }
        }
    }

    RrefResult result{RationalMatrix(m.col_count(), m.labels()), pivots.size(), pivot_cols};
    for (auto& p : pivots)
        result.echelon.add_row(std::move(p));
    return result;
}

std::size_t rank(const RationalMatrix& m)
{
    EchelonBasis basis(m.col_count());
    for (const auto& r : m.rows())
        basis.insert(r);
    return basis.rank();
}

std::vector<SparseVector> kernel_basis(const RationalMatrix& m)
{
    const RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.col_count(), false);
    for (std::size_t c : r.pivot_columns)
        is_pivot[c] = true;

    std::vector<SparseVector> basis;
    for (std::size_t free = 0; free < m.col_count(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<SparseVector::Entry> entries{{free, Rational(1)}};
        for (std::size_t i = 0; i < r.rank; ++i)
            if (const Rational* c = r.echelon.row(i).find(free))
                entries.emplace_back(r.pivot_columns[i], -*c);
        basis.emplace_back(std::move(entries));
    }
    return basis;
}

SolveResult solve(const RationalMatrix& m, const SparseVector& rhs)
{
    if (rhs.extent() > m.row_count())
        throw std::invalid_argument("solve: rhs longer than the row count");

    for (const auto& y : kernel_basis(m.transpose()))
        if (y.dot(rhs) != 0)
            return Inconsistent{y};

    // Augment with rhs as the last column and read the solution off the RREF.
    const std::size_t n = m.col_count();
    RationalMatrix aug(n + 1);
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        SparseVector row = m.row(i);
        row.axpy(1, SparseVector::unit(n, rhs.at(i)));
        aug.add_row(std::move(row));
    }
    const RrefResult r = rref(aug);
    std::vector<SparseVector::Entry> sol;
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (r.pivot_columns[i] == n)
            throw std::logic_error("solve: inconsistent system passed the certificate test");
        if (const Rational* c = r.echelon.row(i).find(n))
            sol.emplace_back(r.pivot_columns[i], *c);
    }
    return SparseVector(std::move(sol));
}

SpanMembership in_span(std::span<const SparseVector> rows, const SparseVector& v)
{
    std::size_t cols = v.extent();
    for (const auto& r : rows)
        cols = std::max(cols, r.extent());
    // Columns of the system are the given rows.
    RationalMatrix t(rows.size());
    {
        std::vector<std::vector<SparseVector::Entry>> by_col(cols);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [c, x] : rows[r])
                by_col[c].emplace_back(r, x);
        for (auto& c : by_col)
            t.add_row(SparseVector(std::move(c)));
    }
    const SolveResult s = solve(t, v);
    if (const auto* x = std::get_if<SparseVector>(&s))
        return {true, *x};
    return {false, {}};
}

// ---------------------------------------------------------------------------

EchelonBasis::EchelonBasis(std::size_t cols)
    : cols_(cols), pivot_row_(cols, -1), occurs_(cols), work_(cols), touched_(cols, 0)
{
}

SparseVector EchelonBasis::reduce(const SparseVector& v) const
{
    if (v.extent() > cols_)
        throw std::out_of_range("EchelonBasis::reduce: index outside the column basis");
    std::vector<std::size_t> touched;
    auto add = [&](std::size_t c, const Rational& x) {
        if (!touched_[c]) {
            touched_[c] = 1;
            touched.push_back(c);
        }
        work_[c] += x;
    };
    Rational f;
    for (const auto& [c, x] : v) {
        const std::int64_t pr = pivot_row_[c];
        if (pr < 0) {
            add(c, x);
            continue;
        }
        for (const auto& [rc, rx] : rows_[static_cast<std::size_t>(pr)]) {
            if (rc == c)
                continue;
            f = x * rx;
            if (!touched_[rc]) {
                touched_[rc] = 1;
                touched.push_back(rc);
            }
            work_[rc] -= f;
        }
    }
    std::sort(touched.begin(), touched.end());
    std::vector<SparseVector::Entry> out;
    for (std::size_t c : touched) {
        if (work_[c] != 0)
            out.emplace_back(c, work_[c]);
        work_[c] = 0;
        touched_[c] = 0;
    }
    SparseVector r;
    r = SparseVector(std::move(out));
    return r;
}

bool EchelonBasis::insert(const SparseVector& v)
{
    SparseVector r = reduce(v);
    if (r.empty())
        return false;
    const std::size_t col = *r.leading_index();
    r.scale(1 / r.entries().front().second);

    const auto new_row = static_cast<std::uint32_t>(rows_.size());
    std::vector<std::uint32_t> affected;
    affected.swap(occurs_[col]);
    for (std::uint32_t ri : affected) {
        SparseVector& row = rows_[ri];
        const Rational* c = row.find(col);
        if (!c)
            continue;
        Rational f = -*c;
        row.axpy(f, r);
        for (const auto& [rc, rx] : r)
            if (rc != col)
                occurs_[rc].push_back(ri);
    }
    for (const auto& [rc, rx] : r)
        if (rc != col)
            occurs_[rc].push_back(new_row);
    pivot_row_[col] = new_row;
    rows_.push_back(std::move(r));

    // Occurrence lists only grow; compact the ones that got long.
    for (const auto& [rc, rx] : rows_.back()) {
        auto& occ = occurs_[rc];
        if (occ.size() > 2 * rows_.size() + 16) {
            std::sort(occ.begin(), occ.end());
            occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
            std::erase_if(occ, [&](std::uint32_t ri) { return rows_[ri].find(rc) == nullptr; });
        }
    }
    return true;
}

std::vector<SparseVector> EchelonBasis::rows() const
{
    std::vector<SparseVector> out;
    out.reserve(rows_.size());
    for (std::size_t c = 0; c < cols_; ++c)
        if (pivot_row_[c] >= 0)
            out.push_back(rows_[static_cast<std::size_t>(pivot_row_[c])]);
    return out;
}

std::vector<std::size_t> EchelonBasis::pivot_columns() const
{
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
        if (pivot_row_[c] >= 0)
            out.push_back(c);
    return out;
}

// -- ModularEchelon ----------------------------------------------------------

ModularEchelon::ModularEchelon(std::size_t cols, std::uint32_t prime)
    : cols_(cols), p_(prime), pivot_row_(cols, -1), occurs_(cols), work_(cols, 0), touched_(cols, 0)
{
}

std::uint32_t ModularEchelon::residue(const Rational& x) const
{
    const auto num = static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_num_mpz_t(), p_));
    const auto den = static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_den_mpz_t(), p_));
    if (den == 0)
        throw std::domain_error("ModularEchelon: denominator divisible by " + std::to_string(p_));
    return static_cast<std::uint32_t>(std::uint64_t{num} * inverse(den) % p_);
}

std::uint32_t ModularEchelon::inverse(std::uint32_t a) const
{
    std::uint64_t result = 1, base = a;
    for (std::uint32_t e = p_ - 2; e != 0; e >>= 1) {
        if (e & 1)
            result = result * base % p_;
        base = base * base % p_;
    }
    return static_cast<std::uint32_t>(result);
}

ModularEchelon::Row ModularEchelon::reduce(const SparseVector& v) const
{
    if (v.extent() > cols_)
        throw std::out_of_range("ModularEchelon::reduce: index outside the column basis");
    std::vector<std::uint32_t> touched;
    auto touch = [&](std::uint32_t c) {
        if (!touched_[c]) {
            touched_[c] = 1;
            touched.push_back(c);
        }
    };
    for (const auto& [c, q] : v) {
        const std::uint64_t x = residue(q);
        const std::int64_t pr = pivot_row_[c];
        if (pr < 0) {
            touch(static_cast<std::uint32_t>(c));
            work_[c] = (work_[c] + x) % p_;
            continue;
        }
        for (const auto& [rc, rx] : rows_[static_cast<std::size_t>(pr)]) {
            if (rc == c)
                continue;
            touch(rc);
            work_[rc] = (work_[rc] + (p_ - x * rx % p_)) % p_;
        }
    }
    std::sort(touched.begin(), touched.end());
    Row out;
    for (std::uint32_t c : touched) {
        if (work_[c] != 0)
            out.emplace_back(c, static_cast<std::uint32_t>(work_[c]));
        work_[c] = 0;
        touched_[c] = 0;
    }
    return out;
}

bool ModularEchelon::insert(const SparseVector& v)
{
    Row r = reduce(v);
    if (r.empty())
        return false;
    const std::uint32_t col = r.front().first;
    const std::uint64_t inv = inverse(r.front().second);
    for (auto& [c, x] : r)
        x = static_cast<std::uint32_t>(x * inv % p_);

    const auto new_row = static_cast<std::uint32_t>(rows_.size());
    std::vector<std::uint32_t> affected;
    affected.swap(occurs_[col]);
    Row merged;
    for (std::uint32_t ri : affected) {
        Row& row = rows_[ri];
        auto at = std::lower_bound(row.begin(), row.end(), col,
                                   [](const auto& e, std::uint32_t c) { return e.first < c; });
        if (at == row.end() || at->first != col)
            continue;
        // row -= f * r, merging two sorted supports.
        const std::uint64_t f = at->second;
        merged.clear();
        auto a = row.begin();
        auto b = r.begin();
        while (a != row.end() || b != r.end()) {
            if (b == r.end() || (a != row.end() && a->first < b->first)) {
                merged.push_back(*a++);
                continue;
            }
            const std::uint64_t sub = p_ - f * b->second % p_;
            std::uint64_t x = sub % p_;
            if (a != row.end() && a->first == b->first)
                x = (x + (a++)->second) % p_;
            else
                occurs_[b->first].push_back(ri);
            if (x != 0)
                merged.emplace_back(b->first, static_cast<std::uint32_t>(x));
            ++b;
        }
        row.swap(merged);
    }
    for (const auto& [rc, rx] : r)
        if (rc != col)
            occurs_[rc].push_back(new_row);
    pivot_row_[col] = new_row;
    rows_.push_back(std::move(r));

    for (const auto& [rc, rx] : rows_.back()) {
        auto& occ = occurs_[rc];
        if (occ.size() > 2 * rows_.size() + 16) {
            std::sort(occ.begin(), occ.end());
            occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
            std::erase_if(occ, [&](std::uint32_t ri) {
                const Row& row = rows_[ri];
                return !std::binary_search(row.begin(), row.end(), std::make_pair(rc, std::uint32_t{0}),
                                           [](const auto& x, const auto& y) { return x.first < y.first; });
            });
        }
    }
    return true;
}

}  // namespace permmut::linalg
