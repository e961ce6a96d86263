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

#include "permmut/mutation.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace permmut::mutation {

using perm::Generator;
using perm::MonomialIndex;
using perm::PermMonomial;

PermElement mutation_product(const PermElement& u, const PermElement& v)
{
    return u * PermElement::p() * v - v * PermElement::q() * u;
}

namespace {

PermElement expand_memo(const terms::BracketTerm& t, const Assignment& assignment,
                        std::map<terms::BracketTerm, PermElement>& memo)
{
    if (t.is_leaf()) {
        if (auto it = assignment.find(t.name()); it != assignment.end())
            return it->second;
        if (auto g = Generator::parse(t.name()))
            return PermElement::generator(*g);
        throw UnresolvedVariable("unresolved variable '" + t.name() + "'");
    }
    if (auto it = memo.find(t); it != memo.end())
        return it->second;
    PermElement l = expand_memo(t.left(), assignment, memo);
    PermElement r = expand_memo(t.right(), assignment, memo);
    PermElement out = t.kind() == terms::NodeKind::Bracket ? mutation_product(l, r) : l * r;
    memo.emplace(t, out);
    return out;
}

}  // namespace

PermElement expand(const terms::BracketTerm& t, const Assignment& assignment)
{
    std::map<terms::BracketTerm, PermElement> memo;
    return expand_memo(t, assignment, memo);
}

PermElement expand(const terms::BracketPolynomial& poly, const Assignment& assignment)
{
    std::map<terms::BracketTerm, PermElement> memo;
    PermElement out;
    for (const auto& [t, c] : poly.terms())
        out += c * expand_memo(t, assignment, memo);
    return out;
}

// ---------------------------------------------------------------------------

MonomialIndex graded_columns(const Multidegree& m)
{
    const unsigned d = perm::total_degree(m);
    if (d == 0)
        return {};
    std::vector<Generator> xs;
    for (const auto& [v, e] : m)
        for (unsigned k = 0; k < e; ++k)
            xs.push_back(Generator::x(v));
    std::vector<PermMonomial> monomials;
    for (const auto& [tail, e] : m) {
        std::vector<Generator> rest = xs;
        rest.erase(std::find(rest.begin(), rest.end(), Generator::x(tail)));
        for (unsigned a = 0; a < d; ++a) {
            std::vector<Generator> prefix = rest;
            prefix.insert(prefix.end(), a, Generator::p());
            prefix.insert(prefix.end(), d - 1 - a, Generator::q());
            monomials.emplace_back(std::move(prefix), Generator::x(tail));
        }
    }
    return MonomialIndex(std::move(monomials));
}

std::vector<Multidegree> multidegrees_up_to(unsigned n_vars, unsigned max_degree)
{
    std::vector<Multidegree> out;
    for (unsigned d = 1; d <= max_degree; ++d) {
        // Exponent vectors of total d, lexicographically descending from x1^d.
        std::vector<unsigned> exps(n_vars, 0);
        std::function<void(unsigned, unsigned)> rec = [&](unsigned var, unsigned left) {
            if (var + 1 == n_vars) {
                exps[var] = left;
                Multidegree m;
                for (unsigned i = 0; i < n_vars; ++i)
                    if (exps[i])
                        m[i + 1] = exps[i];
                out.push_back(std::move(m));
                return;
            }
            for (unsigned e = left + 1; e-- > 0;) {
                exps[var] = e;
                rec(var + 1, left - e);
            }
        };
        if (n_vars > 0)
            rec(0, d);
    }
    return out;
}

namespace {

// Proper nonzero parts m1 of m, so that m = m1 + (m - m1) with both nonzero.
std::vector<std::pair<Multidegree, Multidegree>> splits(const Multidegree& m)
{
    std::vector<std::pair<std::uint32_t, unsigned>> vars(m.begin(), m.end());
    std::vector<unsigned> take(vars.size(), 0);
    std::vector<std::pair<Multidegree, Multidegree>> out;
    while (true) {
        std::size_t i = 0;
        for (; i < vars.size(); ++i) {
            if (take[i] < vars[i].second) {
                ++take[i];
                break;
            }
            take[i] = 0;
        }
        if (i == vars.size())
            break;
        Multidegree a, b;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            if (take[k])
                a[vars[k].first] = take[k];
            if (vars[k].second - take[k])
                b[vars[k].first] = vars[k].second - take[k];
        }
        if (!b.empty())
            out.emplace_back(std::move(a), std::move(b));
    }
    return out;
}

Multidegree add(Multidegree a, const Multidegree& b)
{
    for (const auto& [v, e] : b)
        a[v] += e;
    return a;
}

class BracketSpanCache {
public:
    const std::vector<PermElement>& get(const Multidegree& m)
    {
        if (auto it = cache_.find(m); it != cache_.end())
            return it->second;
        std::vector<PermElement> out;
        if (perm::total_degree(m) == 1) {
            out.push_back(PermElement::x(m.begin()->first));
        } else {
            for (const auto& [a, b] : splits(m)) {
                const auto& left = get(a);
                const auto& right = get(b);
                for (const auto& u : left)
                    for (const auto& v : right)
                        out.push_back(mutation_product(u, v));
            }
        }
        return cache_.emplace(m, std::move(out)).first->second;
    }

private:
    std::map<Multidegree, std::vector<PermElement>> cache_;
};

void append_power(const PermElement& base, unsigned k, std::vector<PermElement>& factors)
{
    factors.insert(factors.end(), k, base);
}

std::string power_label(const std::string& base, unsigned k)
{
    if (k == 0)
        return "";
    return base + (k == 1 ? "" : "^" + std::to_string(k)) + " ";
}

}  // namespace

std::vector<PermElement> bracket_span(const Multidegree& m)
{
    if (perm::total_degree(m) == 0)
        throw std::invalid_argument("bracket_span needs total degree >= 1");
    BracketSpanCache cache;
    return cache.get(m);
}

// ---------------------------------------------------------------------------

std::string to_string(BFamily f)
{
    switch (f) {
    case BFamily::X:
        return "X";
    case BFamily::B1:
        return "B1";
    case BFamily::B2:
        return "B2";
    case BFamily::B3:
        return "B3";
    }
    return "?";
}

std::string BSetElement::label() const
{
    auto x = [](std::uint32_t i) { return "x" + std::to_string(i); };
    const unsigned n = static_cast<unsigned>(indices.size());
    std::string out;
    switch (family) {
    case BFamily::X:
        return x(indices[0]);
    case BFamily::B1:
        return x(indices[0]) + " p " + x(indices[1]) + " - " + x(indices[1]) + " q " + x(indices[0]);
    case BFamily::B2:
        out = "(p-q)" + std::string(n > 2 ? "^" + std::to_string(n - 1) : "");
        for (unsigned k = n; k-- > 0;)
            out += " " + x(indices[k]);
        return out;
    case BFamily::B3:
        out = power_label("p", n - 1 - exponent) + power_label("q", exponent);
        for (unsigned k = n; k-- > 2;)
            out += x(indices[k]) + " ";
        return out + "[" + x(indices[1]) + "," + x(indices[0]) + "]";
    }
    return out;
}

Multidegree BSetElement::multidegree() const
{
    Multidegree m;
    for (auto i : indices)
        ++m[i];
    return m;
}

std::vector<BSetElement> enumerate_B(unsigned n_vars, unsigned max_degree, bool include_diagonal)
{
    std::vector<BSetElement> out;
    if (n_vars == 0 || max_degree == 0)
        return out;
    for (std::uint32_t i = 1; i <= n_vars; ++i)
        out.push_back({BFamily::X, {i}, 0, PermElement::x(i)});
    if (max_degree >= 2) {
        for (std::uint32_t i = 1; i <= n_vars; ++i)
            for (std::uint32_t j = 1; j <= n_vars; ++j)
                if (i != j || include_diagonal)
                    out.push_back({BFamily::B1, {i, j}, 0, mutation_product(PermElement::x(i), PermElement::x(j))});
    }
    const PermElement p = PermElement::p();
    const PermElement q = PermElement::q();
    for (unsigned d = 3; d <= max_degree; ++d) {
        // Nondecreasing index sequences of length d.
        std::vector<std::vector<std::uint32_t>> multisets;
        std::vector<std::uint32_t> cur(d, 1);
        while (true) {
            multisets.push_back(cur);
            std::size_t k = d;
            while (k > 0 && cur[k - 1] == n_vars)
                --k;
            if (k == 0)
                break;
            const std::uint32_t v = cur[k - 1] + 1;
            for (std::size_t t = k - 1; t < d; ++t)
                cur[t] = v;
        }
        for (const auto& ms : multisets) {
            for (std::size_t t = 0; t < d; ++t) {
                if (t > 0 && ms[t] == ms[t - 1])
                    continue;
                std::vector<std::uint32_t> idx{ms[t]};
                for (std::size_t k = 0; k < d; ++k)
                    if (k != t)
                        idx.push_back(ms[k]);
                std::vector<PermElement> factors;
                append_power(p - q, d - 1, factors);
                for (std::size_t k = d; k-- > 0;)
                    factors.push_back(PermElement::x(idx[k]));
                out.push_back({BFamily::B2, idx, 0, perm::product(factors)});
            }
        }
        for (const auto& ms : multisets) {
            const std::uint32_t j1 = ms[0];
            for (std::size_t t = 1; t < d; ++t) {
                if (ms[t] == j1 || ms[t] == ms[t - 1])
                    continue;
                std::vector<std::uint32_t> idx{j1, ms[t]};
                for (std::size_t k = 1; k < d; ++k)
                    if (k != t)
                        idx.push_back(ms[k]);
                for (unsigned i = 1; i <= d - 1; ++i) {
                    std::vector<PermElement> factors;
                    append_power(p, d - 1 - i, factors);
                    append_power(q, i, factors);
                    for (std::size_t k = d; k-- > 2;)
                        factors.push_back(PermElement::x(idx[k]));
                    factors.push_back(perm::commutator(PermElement::x(idx[1]), PermElement::x(idx[0])));
                    out.push_back({BFamily::B3, idx, i, perm::product(factors)});
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

const MutationSpace::Component& MutationSpace::component(const Multidegree& m)
{
    if (auto it = cache_.find(m); it != cache_.end())
        return it->second;
    if (perm::total_degree(m) == 0)
        throw std::invalid_argument("component of the zero multidegree");
    MonomialIndex columns = graded_columns(m);
    linalg::EchelonBasis basis(columns.size());
    if (perm::total_degree(m) == 1) {
        basis.insert(columns.to_vector(PermElement::x(m.begin()->first)));
    } else {
        for (const auto& [a, b] : splits(m)) {
            const Component& left = component(a);
            const Component& right = component(b);
            for (const auto& u : left.elements)
                for (const auto& v : right.elements) {
                    if (basis.rank() == columns.size())
                        break;
                    basis.insert(columns.to_vector(mutation_product(u, v)));
                }
        }
    }
    std::vector<PermElement> elements;
    for (const auto& row : basis.rows())
        elements.push_back(columns.to_element(row));
    return cache_.emplace(m, Component{std::move(columns), std::move(basis), std::move(elements)}).first->second;
}

bool MutationSpace::contains(const PermElement& e)
{
    for (const auto& [m, part] : e.homogeneous_parts()) {
        const unsigned d = perm::total_degree(m);
        if (d == 0)
            return false;
        for (const auto& [mono, c] : part.terms())
            if (mono.param_degree() + 1 != d)
                return false;
        const Component& comp = component(m);
        auto v = comp.columns.try_vector(part);
        if (!v || !comp.basis.contains(*v))
            return false;
    }
    return true;
}

bool is_mutation_element(const PermElement& e)
{
    static std::mutex mutex;
    static MutationSpace space;
    std::lock_guard lock(mutex);
    return space.contains(e);
}

// ---------------------------------------------------------------------------

BasisReport verify_basis_B(unsigned n_vars, unsigned degree)
{
    BasisReport report;
    report.n_vars = n_vars;
    report.degree = degree;
    report.independent = report.spans = report.closed_under_bracket = report.elements_are_mutation = true;
    auto fail = [&](bool& flag, std::string msg) {
        flag = false;
        if (report.failures.size() < 20)
            report.failures.push_back(std::move(msg));
    };

    const auto elements = enumerate_B(n_vars, degree, true);
    report.element_count = elements.size();
    std::map<Multidegree, std::vector<const BSetElement*>> by_degree;
    for (const auto& b : elements) {
        by_degree[b.multidegree()].push_back(&b);
        if (b.family == BFamily::B1) {
            ++report.b1_count;
            if (b.indices[0] != b.indices[1])
                ++report.b1_count_off_diagonal;
        }
    }

    struct Slice {
        MonomialIndex columns;
        linalg::EchelonBasis basis;
    };
    std::map<Multidegree, Slice> slices;
    BracketSpanCache spans;
    MutationSpace space;
    Multidegree multilinear;
    for (std::uint32_t i = 1; i <= degree; ++i)
        multilinear[i] = 1;

    for (const auto& m : multidegrees_up_to(n_vars, degree)) {
        MonomialIndex columns = graded_columns(m);
        linalg::EchelonBasis basis(columns.size());
        for (const BSetElement* b : by_degree[m]) {
            auto v = columns.try_vector(b->value);
            if (!v) {
                fail(report.independent, b->label() + " leaves the graded component " + perm::to_string(m));
                continue;
            }
            if (!basis.insert(*v))
                fail(report.independent, b->label() + " is dependent on earlier elements");
            if (!space.contains(b->value))
                fail(report.elements_are_mutation, b->label() + " is not a mutation element");
        }
        for (const auto& e : spans.get(m)) {
            auto v = columns.try_vector(e);
            if (!v || !basis.contains(*v))
                fail(report.spans, "bracket monomial outside span(B): " + e.render());
        }
        if (n_vars >= degree && m == multilinear)
            report.multilinear_dim = basis.rank();
        slices.emplace(m, Slice{std::move(columns), std::move(basis)});
    }

    for (const auto& a : elements) {
        const unsigned da = static_cast<unsigned>(a.indices.size());
        for (const auto& b : elements) {
            if (da + b.indices.size() > degree)
                continue;
            ++report.closure_pairs;
            const Multidegree m = add(a.multidegree(), b.multidegree());
            const Slice& s = slices.at(m);
            const PermElement w = mutation_product(a.value, b.value);
            auto v = s.columns.try_vector(w);
            if (!v || !s.basis.contains(*v))
                fail(report.closed_under_bracket, "<" + a.label() + ", " + b.label() + "> outside span(B)");
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

bool RelationsReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.holds; });
}

PermElement random_element(std::mt19937_64& rng, unsigned n_vars, unsigned max_degree, unsigned max_terms)
{
    std::uniform_int_distribution<unsigned> terms(1, max_terms);
    std::uniform_int_distribution<unsigned> deg(1, max_degree);
    std::uniform_int_distribution<unsigned> letter(0, n_vars + 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto gen = [&]() {
        const unsigned l = letter(rng);
        if (l == n_vars)
            return Generator::p();
        if (l == n_vars + 1)
            return Generator::q();
        return Generator::x(l + 1);
    };
    PermElement out;
    const unsigned k = terms(rng);
    for (unsigned t = 0; t < k; ++t) {
        std::vector<Generator> word;
        for (unsigned len = deg(rng); word.size() < len;)
            word.push_back(gen());
        out.add_term(perm::normalize_word(word), coeff(rng));
    }
    return out;
}

RelationsReport check_relations(unsigned samples, std::uint64_t seed)
{
    using Rel = std::function<std::pair<PermElement, PermElement>(const PermElement&, const PermElement&,
                                                                  const PermElement&)>;
    const PermElement P = PermElement::p();
    const PermElement Q = PermElement::q();
    const auto mp = mutation_product;
    const auto comm = perm::commutator;
    const std::vector<std::pair<std::string, Rel>> relations = {
        {"<a,b> = (p-q)ab + q[a,b]",
         [&](auto& a, auto& b, auto&) { return std::pair{mp(a, b), (P - Q) * a * b + Q * comm(a, b)}; }},
        {"<a,bc> = b<a,c>", [&](auto& a, auto& b, auto& c) { return std::pair{mp(a, b * c), b * mp(a, c)}; }},
        {"<ab,c> = a<b,c>", [&](auto& a, auto& b, auto& c) { return std::pair{mp(a * b, c), a * mp(b, c)}; }},
        {"<a,[b,c]> = pa[b,c]",
         [&](auto& a, auto& b, auto& c) { return std::pair{mp(a, comm(b, c)), P * a * comm(b, c)}; }},
        {"<[a,b],c> = -qc[a,b]",
         [&](auto& a, auto& b, auto& c) { return std::pair{mp(comm(a, b), c), -(Q * c * comm(a, b))}; }},
        {"<b,<a,c>> = ap<b,c> - cq<b,a>",
         [&](auto& a, auto& b, auto& c) {
             return std::pair{mp(b, mp(a, c)), a * P * mp(b, c) - c * Q * mp(b, a)};
         }},
    };

    struct Instance {
        std::string name;
        PermElement a, b, c;
        bool expect_zero = false;
    };
    std::vector<Instance> instances;
    instances.push_back({"generators", PermElement::x(1), PermElement::x(2), PermElement::x(3)});
    instances.push_back({"zero", PermElement{}, PermElement::x(2), PermElement::x(3), true});
    std::mt19937_64 rng(seed);
    for (unsigned k = 0; k < samples; ++k) {
        PermElement a = random_element(rng, 3, 2, 3);
        PermElement b = random_element(rng, 3, 2, 3);
        PermElement c = random_element(rng, 3, 2, 3);
        instances.push_back({"random #" + std::to_string(k + 1), a, b, c});
    }

    RelationsReport report;
    for (const auto& inst : instances) {
        for (const auto& [name, rel] : relations) {
            auto [lhs, rhs] = rel(inst.a, inst.b, inst.c);
            RelationCheck check{name, inst.name, lhs == rhs, {}};
            if (inst.expect_zero && (!lhs.is_zero() || !rhs.is_zero()))
                check.holds = false;
            if (!check.holds)
                check.witness = "lhs - rhs = " + (lhs - rhs).render() + "; lhs = " + lhs.render();
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

}  // namespace permmut::mutation
