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

#include <algorithm>

namespace permmut::findim {

Vector Vector::unit(std::size_t dim, std::size_t i)
{
    if (i >= dim)
        throw DimensionMismatch("basis index " + std::to_string(i + 1) + " out of range for dimension " +
                                std::to_string(dim));
    Vector v(dim);
    v.coords_[i] = 1;
    return v;
}

bool Vector::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

Vector& Vector::operator+=(const Vector& o)
{
    if (o.size() != size())
        throw DimensionMismatch("vector lengths differ");
    for (std::size_t i = 0; i < size(); ++i)
        coords_[i] += o.coords_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& o)
{
    if (o.size() != size())
        throw DimensionMismatch("vector lengths differ");
    for (std::size_t i = 0; i < size(); ++i)
        coords_[i] -= o.coords_[i];
    return *this;
}

Vector& Vector::operator*=(const Rational& c)
{
    for (auto& x : coords_)
        x *= c;
    return *this;
}

std::string Vector::render(const std::vector<std::string>& names) const
{
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
        const Rational& c = coords_[i];
        if (c == 0)
            continue;
        const bool neg = c < 0;
        const Rational a = neg ? Rational(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (a != 1)
            out += permmut::to_string(a) + " ";
        out += i < names.size() ? names[i] : "e" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

FiniteAlgebra::FiniteAlgebra(std::size_t dim, std::vector<std::string> names)
    : dim_(dim), names_(std::move(names)), table_(dim * dim * dim)
{
    if (dim == 0)
        throw std::invalid_argument("algebra dimension must be positive");
    if (names_.empty())
        for (std::size_t i = 1; i <= dim; ++i)
            names_.push_back("e" + std::to_string(i));
    if (names_.size() != dim)
        throw DimensionMismatch("expected " + std::to_string(dim) + " basis names, got " +
                                std::to_string(names_.size()));
}

std::size_t FiniteAlgebra::index(std::size_t i, std::size_t j, std::size_t k) const
{
    if (i >= dim_ || j >= dim_ || k >= dim_)
        throw DimensionMismatch("structure constant index out of range");
    return (i * dim_ + j) * dim_ + k;
}

const Rational& FiniteAlgebra::at(std::size_t i, std::size_t j, std::size_t k) const
{
    return table_[index(i, j, k)];
}

void FiniteAlgebra::set(std::size_t i, std::size_t j, std::size_t k, const Rational& c)
{
    table_[index(i, j, k)] = c;
}

Vector FiniteAlgebra::multiply(const Vector& x, const Vector& y) const
{
    if (x.size() != dim_ || y.size() != dim_)
        throw DimensionMismatch("vector of length " + std::to_string(x.size() != dim_ ? x.size() : y.size()) +
                                " in an algebra of dimension " + std::to_string(dim_));
    Vector out(dim_);
    Rational xy;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y[j] == 0)
                continue;
            xy = x[i] * y[j];
            const Rational* row = &table_[(i * dim_ + j) * dim_];
            for (std::size_t k = 0; k < dim_; ++k)
                if (row[k] != 0)
                    out[k] += xy * row[k];
        }
    }
    return out;
}

namespace {

// A polynomial compiled into a DAG of distinct subterms, so that shared
// subterms are evaluated once per assignment.
class Compiled {
public:
    Compiled(const terms::BracketPolynomial& poly, std::vector<std::string> variables)
        : variables_(std::move(variables))
    {
        for (const auto& [t, c] : poly.terms())
            roots_.emplace_back(add(t), c);
    }

    [[nodiscard]] const std::vector<std::string>& variables() const noexcept { return variables_; }

    Vector run(const FiniteAlgebra& a, const std::vector<Vector>& values, const std::optional<MutationParams>& params,
               bool bracket_is_product) const
    {
        std::vector<Vector> v(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            if (n.leaf)
                v[i] = values[n.var];
            else if (n.kind == terms::NodeKind::Product || bracket_is_product)
                v[i] = a.multiply(v[n.left], v[n.right]);
            else
                v[i] = a.multiply(a.multiply(v[n.left], params->p), v[n.right]) -
                       a.multiply(a.multiply(v[n.right], params->q), v[n.left]);
        }
        Vector out(a.dim());
        for (const auto& [id, c] : roots_)
            out += c * v[id];
        return out;
    }

private:
    struct Node {
        bool leaf = false;
        std::size_t var = 0;
        terms::NodeKind kind = terms::NodeKind::Bracket;
        std::size_t left = 0;
        std::size_t right = 0;
    };

    std::size_t add(const terms::BracketTerm& t)
    {
        if (auto it = ids_.find(t); it != ids_.end())
            return it->second;
        Node n;
        if (t.is_leaf()) {
            auto it = std::find(variables_.begin(), variables_.end(), t.name());
            if (it == variables_.end())
                throw std::invalid_argument("unassigned variable '" + t.name() + "'");
            n.leaf = true;
            n.var = static_cast<std::size_t>(it - variables_.begin());
        } else {
            n.kind = t.kind();
            n.left = add(t.left());
            n.right = add(t.right());
        }
        nodes_.push_back(n);
        ids_.emplace(t, nodes_.size() - 1);
        return nodes_.size() - 1;
    }

    std::vector<std::string> variables_;
    std::vector<Node> nodes_;
    std::map<terms::BracketTerm, std::size_t> ids_;
    std::vector<std::pair<std::size_t, Rational>> roots_;
};

// Decides how bracket nodes are read; see evaluate().
bool bracket_reads_as_product(const FiniteAlgebra& a, const terms::BracketPolynomial& poly,
                              const std::optional<MutationParams>& params)
{
    const auto kinds = poly.node_kinds();
    const bool has_bracket = kinds.count(terms::NodeKind::Bracket) != 0;
    if (params) {
        if (params->p.size() != a.dim() || params->q.size() != a.dim())
            throw DimensionMismatch("p and q must have length " + std::to_string(a.dim()));
        return false;
    }
    if (has_bracket && kinds.count(terms::NodeKind::Product) != 0)
        throw MissingParameters("missing p,q: the polynomial mixes <,> and * nodes");
    return true;
}

}  // namespace

Vector evaluate(const FiniteAlgebra& a, const terms::BracketPolynomial& poly, const VectorAssignment& assignment,
                const std::optional<MutationParams>& params)
{
    const bool as_product = bracket_reads_as_product(a, poly, params);
    std::vector<std::string> names;
    std::vector<Vector> values;
    for (const auto& [name, v] : assignment) {
        if (v.size() != a.dim())
            throw DimensionMismatch("value of '" + name + "' has length " + std::to_string(v.size()) +
                                    ", expected " + std::to_string(a.dim()));
        names.push_back(name);
        values.push_back(v);
    }
    return Compiled(poly, std::move(names)).run(a, values, params, as_product);
}

std::string Witness::render(const FiniteAlgebra& a) const
{
    std::string out = "(";
    for (std::size_t i = 0; i < basis_indices.size(); ++i) {
        if (i)
            out += ",";
        out += a.names()[basis_indices[i]];
    }
    return out + ") -> " + value.render(a.names());
}

CheckResult satisfies(const FiniteAlgebra& a, const terms::BracketPolynomial& poly,
                      const std::optional<MutationParams>& params)
{
    const auto lin = terms::multilinearize(poly);
    const bool as_product = bracket_reads_as_product(a, lin, params);
    const auto var_set = lin.variables();
    const std::vector<std::string> vars(var_set.begin(), var_set.end());
    const Compiled compiled(lin, vars);

    const std::size_t k = vars.size();
    std::vector<std::size_t> tuple(k, 0);
    std::vector<Vector> values(k, a.basis(0));
    while (true) {
        for (std::size_t i = 0; i < k; ++i)
            values[i] = a.basis(tuple[i]);
        Vector v = compiled.run(a, values, params, as_product);
        if (!v.is_zero())
            return CheckResult{false, Witness{vars, tuple, std::move(v)}};
        // Lexicographic successor.
        std::size_t pos = k;
        while (pos > 0 && tuple[pos - 1] + 1 == a.dim())
            tuple[--pos] = 0;
        if (pos == 0)
            break;
        ++tuple[pos - 1];
    }
    return {};
}

CheckResult satisfies(const FiniteAlgebra& a, const terms::IdentityTemplate& t,
                      const std::optional<MutationParams>& params)
{
    // Instantiate at the slot names themselves so that witnesses name them.
    return satisfies(a, terms::instantiate(t, std::span<const std::string>(t.slots)), params);
}

FiniteAlgebra mutation_algebra(const FiniteAlgebra& a, const Vector& p, const Vector& q)
{
    if (p.size() != a.dim() || q.size() != a.dim())
        throw DimensionMismatch("p and q must have length " + std::to_string(a.dim()));
    const std::size_t n = a.dim();
    std::vector<Vector> ep, eq;
    for (std::size_t i = 0; i < n; ++i) {
        ep.push_back(a.multiply(a.basis(i), p));
        eq.push_back(a.multiply(a.basis(i), q));
    }
    FiniteAlgebra out(n, a.names());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector v = a.multiply(ep[i], a.basis(j)) - a.multiply(eq[j], a.basis(i));
            for (std::size_t k = 0; k < n; ++k)
                if (v[k] != 0)
                    out.set(i, j, k, v[k]);
        }
    return out;
}

CheckResult lie_admissible_criterion(const FiniteAlgebra& a)
{
    return satisfies(a, terms::TemplateRegistry::builtin().at("crit36"));
}

CheckResult jacobi_test(const FiniteAlgebra& a)
{
    const std::size_t n = a.dim();
    // circ[i][j] = e_i e_j - e_j e_i
    std::vector<std::vector<Vector>> circ(n, std::vector<Vector>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            circ[i][j] = a.multiply(a.basis(i), a.basis(j)) - a.multiply(a.basis(j), a.basis(i));
    auto circ_right = [&](const Vector& u, std::size_t k) {
        Vector out(n);
        for (std::size_t m = 0; m < n; ++m)
            if (u[m] != 0)
                out += u[m] * circ[m][k];
        return out;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vector v = circ_right(circ[i][j], k) + circ_right(circ[j][k], i) + circ_right(circ[k][i], j);
                if (!v.is_zero())
                    return CheckResult{false, Witness{{"a", "b", "c"}, {i, j, k}, std::move(v)}};
            }
    return {};
}

CheckResult is_bicommutative(const FiniteAlgebra& a)
{
    const auto& reg = terms::TemplateRegistry::builtin();
    CheckResult r = satisfies(a, reg.at("bicomm_right"));
    if (!r.holds)
        return r;
    return satisfies(a, reg.at("bicomm_left"));
}

FiniteAlgebra f_not_wa_algebra()
{
    FiniteAlgebra a(3);
    a.set(0, 1, 0, 1);
    a.set(1, 0, 0, -1);
    a.set(2, 0, 1, 1);
    return a;
}

std::optional<JacobiFailure> falsify_lie_admissibility(const FiniteAlgebra& a, std::mt19937_64& rng,
                                                       unsigned attempts)
{
    for (unsigned t = 0; t < attempts; ++t) {
        Vector p = random_vector(rng, a.dim());
        Vector q = random_vector(rng, a.dim());
        CheckResult r = jacobi_test(mutation_algebra(a, p, q));
        if (!r.holds)
            return JacobiFailure{std::move(p), std::move(q), std::move(*r.witness)};
    }
    return std::nullopt;
}

}  // namespace permmut::findim
