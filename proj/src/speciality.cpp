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

#include "permmut/speciality.hpp"

#include "permmut/mutation.hpp"

#include <algorithm>
#include <set>

namespace permmut::speciality {

using perm::Generator;
using perm::PermMonomial;
using terms::BracketTerm;

namespace {

// Every sub-multiset of m, including the empty one and m itself.
std::vector<Multidegree> sub_multisets(const Multidegree& m)
{
    std::vector<Multidegree> out{Multidegree{}};
    for (const auto& [var, count] : m) {
        std::vector<Multidegree> next;
        for (const auto& s : out)
            for (unsigned c = 0; c <= count; ++c) {
                Multidegree t = s;
                if (c)
                    t[var] = c;
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

Multidegree minus(Multidegree a, const Multidegree& b)
{
    for (const auto& [var, count] : b) {
        auto it = a.find(var);
        if (it == a.end() || it->second < count)
            throw UnreachableMultidegree("multidegree " + perm::to_string(b) + " does not fit into the target");
        if ((it->second -= count) == 0)
            a.erase(it);
    }
    return a;
}

// a - b, or nothing when b does not fit into a.
std::optional<Multidegree> remaining(const Multidegree& a, const Multidegree& b)
{
    try {
        return minus(a, b);
    } catch (const UnreachableMultidegree&) {
        return std::nullopt;
    }
}

std::vector<BracketTerm> bracket_monomials(const Multidegree& m)
{
    const unsigned d = perm::total_degree(m);
    if (d == 1)
        return {BracketTerm::leaf("x" + std::to_string(m.begin()->first))};
    std::set<BracketTerm> out;
    for (const auto& left : sub_multisets(m)) {
        const unsigned l = perm::total_degree(left);
        if (l == 0 || l == d)
            continue;
        const auto ls = bracket_monomials(left);
        const auto rs = bracket_monomials(minus(m, left));
        for (const auto& a : ls)
            for (const auto& b : rs)
                out.insert(BracketTerm::bracket(a, b));
    }
    return {out.begin(), out.end()};
}

void ideal_words(const BracketPolynomial& w, const Multidegree& missing, std::vector<BracketPolynomial>& out,
                 std::set<std::string>& seen)
{
    if (missing.empty()) {
        if (seen.insert(w.render()).second)
            out.push_back(w);
        return;
    }
    for (const auto& part : sub_multisets(missing)) {
        if (part.empty())
            continue;
        const Multidegree rest = minus(missing, part);
        for (const auto& u : bracket_monomials(part)) {
            const BracketPolynomial up(u);
            ideal_words(terms::bracket(w, up), rest, out, seen);
            ideal_words(terms::bracket(up, w), rest, out, seen);
        }
    }
}

// Monomials with the given letters, one per distinct choice of tail.
std::vector<PermMonomial> monomials_with(std::vector<Generator> letters)
{
    std::sort(letters.begin(), letters.end());
    std::vector<PermMonomial> out;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i > 0 && letters[i] == letters[i - 1])
            continue;
        std::vector<Generator> prefix = letters;
        prefix.erase(prefix.begin() + static_cast<std::ptrdiff_t>(i));
        out.emplace_back(std::move(prefix), letters[i]);
    }
    return out;
}

std::vector<Generator> letters_of(const Multidegree& xs, unsigned ps, unsigned qs)
{
    std::vector<Generator> out;
    for (const auto& [var, count] : xs)
        for (unsigned c = 0; c < count; ++c)
            out.push_back(Generator::x(var));
    for (unsigned i = 0; i < ps; ++i)
        out.push_back(Generator::p());
    for (unsigned i = 0; i < qs; ++i)
        out.push_back(Generator::q());
    return out;
}

}  // namespace

Multidegree multidegree_of(const BracketPolynomial& poly)
{
    std::optional<Multidegree> common;
    for (const auto& [t, c] : poly.terms()) {
        Multidegree m;
        for (const auto& leaf : t.leaves()) {
            auto g = Generator::parse(leaf);
            if (!g || !g->is_variable())
                throw std::invalid_argument("leaf '" + leaf + "' is not a variable x<i>");
            ++m[g->index()];
        }
        if (common && *common != m)
            throw std::invalid_argument("terms of " + poly.render() + " have different multidegrees");
        common = std::move(m);
    }
    return common.value_or(Multidegree{});
}

std::vector<BracketPolynomial> mutation_ideal_words(const IdealComponentRequest& req)
{
    std::vector<BracketPolynomial> out;
    std::set<std::string> seen;
    bool any = false, fits = false;
    for (const auto& g : req.generators) {
        if (g.is_zero())
            continue;
        any = true;
        const auto missing = remaining(req.target, multidegree_of(g));
        if (!missing)
            continue;
        fits = true;
        ideal_words(g, *missing, out, seen);
    }
    if (any && !fits)
        throw UnreachableMultidegree("no generator fits into the target multidegree " + perm::to_string(req.target));
    return out;
}

std::vector<PermElement> mutation_ideal_component(const IdealComponentRequest& req)
{
    std::vector<PermElement> out;
    for (const auto& w : mutation_ideal_words(req))
        out.push_back(mutation::expand(w));
    return out;
}

std::vector<PermElement> perm_ideal_component(std::span<const PermElement> generators, const Multidegree& m)
{
    const perm::MonomialIndex columns = mutation::graded_columns(m);
    linalg::EchelonBasis basis(columns.size());
    const unsigned target_params = perm::total_degree(m) - 1;
    for (const auto& g : generators) {
        if (g.is_zero())
            continue;
        const auto parts = g.homogeneous_parts();
        if (parts.size() != 1)
            throw std::invalid_argument("ideal generator " + g.render() + " is not homogeneous");
        std::set<unsigned> pdeg;
        for (const auto& [mono, c] : g.terms())
            pdeg.insert(mono.param_degree());
        if (pdeg.size() != 1)
            throw std::invalid_argument("ideal generator " + g.render() + " mixes parameter degrees");
        const auto rest = remaining(m, parts.begin()->first);
        if (!rest || *pdeg.begin() > target_params)
            continue;
        const Multidegree& missing = *rest;
        const unsigned extra = target_params - *pdeg.begin();

        auto add = [&](const PermElement& e) {
            if (auto v = columns.try_vector(e))
                basis.insert(*v);
        };
        for (const auto& du : sub_multisets(missing)) {
            const Multidegree dv = minus(missing, du);
            for (unsigned a = 0; a <= extra; ++a)
                for (unsigned pu = 0; pu <= a; ++pu)
                    for (unsigned pv = 0; pv <= extra - a; ++pv) {
                        const auto lu = letters_of(du, pu, a - pu);
                        const auto lv = letters_of(dv, pv, extra - a - pv);
                        if (lu.empty() && lv.empty()) {
                            add(g);
                            continue;
                        }
                        const auto us = lu.empty() ? std::vector<PermMonomial>{} : monomials_with(lu);
                        const auto vs = lv.empty() ? std::vector<PermMonomial>{} : monomials_with(lv);
                        if (lu.empty())
                            for (const auto& v : vs)
                                add(g * PermElement(v));
                        else if (lv.empty())
                            for (const auto& u : us)
                                add(PermElement(u) * g);
                        else
                            for (const auto& u : us)
                                for (const auto& v : vs)
                                    add(PermElement(u) * g * PermElement(v));
                    }
        }
    }
    std::vector<PermElement> out;
    for (const auto& row : basis.rows())
        out.push_back(columns.to_element(row));
    return out;
}

Equation Equation::normalized() const
{
    Equation e = *this;
    Rational lead = 0;
    for (const auto& c : coefficients)
        if (c != 0) {
            lead = c;
            break;
        }
    if (lead == 0)
        lead = rhs;
    if (lead < 0) {
        for (auto& c : e.coefficients)
            c = -c;
        e.rhs = -e.rhs;
    }
    return e;
}

std::string Equation::render() const
{
    std::string out;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const Rational& c = coefficients[i];
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
        out += "λ" + std::to_string(i + 1);
    }
    if (out.empty())
        out = "0";
    return out + " = " + permmut::to_string(rhs);
}

CohnReport cohn_check(const IdealComponentRequest& req, const BracketPolynomial& target)
{
    CohnReport r;
    // Generators that do not fit contribute nothing to this component.
    IdealComponentRequest fitting{{}, req.target};
    for (const auto& g : req.generators)
        if (!g.is_zero() && remaining(req.target, multidegree_of(g)))
            fitting.generators.push_back(g);
    r.ansatz = mutation_ideal_words(fitting);
    r.target_expansion = mutation::expand(target);

    std::vector<PermElement> gens;
    for (const auto& g : fitting.generators)
        gens.push_back(mutation::expand(g));
    const auto perm_span = perm_ideal_component(gens, req.target);
    {
        const perm::MonomialIndex columns = mutation::graded_columns(req.target);
        linalg::EchelonBasis basis(columns.size());
        for (const auto& e : perm_span)
            basis.insert(columns.to_vector(e));
        const auto tv = columns.try_vector(r.target_expansion);
        r.in_perm_ideal = tv && basis.contains(*tv);
    }

    std::vector<PermElement> values;
    for (const auto& w : r.ansatz)
        values.push_back(mutation::expand(w));
    std::vector<PermElement> support = values;
    support.push_back(r.target_expansion);
    const auto rows = perm::MonomialIndex::covering(support);
    r.equation_monomials = rows.monomials();

    const std::size_t k = values.size();
    std::vector<std::vector<Rational>> dense(rows.size(), std::vector<Rational>(k));
    for (std::size_t j = 0; j < k; ++j)
        for (const auto& [i, c] : rows.to_vector(values[j]))
            dense[i][j] = c;
    const auto rhs = rows.to_vector(r.target_expansion);
    for (std::size_t i = 0; i < rows.size(); ++i)
        r.equations.push_back(Equation{dense[i], rhs.at(i)});
    r.system = linalg::RationalMatrix(k, {});
    for (const auto& row : dense)
        r.system.add_row(linalg::SparseVector::from_dense(row));
    r.rhs = rhs;

    if (r.target_expansion.is_zero()) {
        r.in_mutation_ideal = true;
    } else {
        auto sol = linalg::solve(r.system, rhs);
        if (auto* bad = std::get_if<linalg::Inconsistent>(&sol))
            r.certificate = bad->certificate;
        else
            r.in_mutation_ideal = true;
    }

    if (r.certified())
        r.verdict = kCertifiedVerdict;
    else if (r.in_mutation_ideal)
        r.verdict = "not certified: the target lies in the ideal";
    else
        r.verdict = "not certified: the target lies outside the perm ideal";
    return r;
}

IdealComponentRequest cohn_instance()
{
    IdealComponentRequest req;
    req.generators = {terms::parse("<<x2,x3>,x4>"), terms::parse("<<x2,x3>,x1>")};
    req.target = {{1, 1}, {2, 1}, {3, 1}, {4, 1}};
    return req;
}

BracketPolynomial cohn_target()
{
    return terms::parse("<<x2,x3>,<x1,x4>>");
}

std::vector<Equation> reference_cohn_equations()
{
    const int rows[12][5] = {
        {0, 1, 1, 0, 1}, {1, 1, 2, 1, 1}, {0, 0, 0, 1, 0}, {1, 0, 1, 2, 0}, {0, 1, 0, 1, 1}, {1, 0, 1, 0, 1},
        {0, 1, 0, 1, 1}, {1, 0, 1, 0, 1}, {1, 0, 0, 1, 0}, {2, 1, 1, 1, 1}, {1, 2, 1, 0, 1}, {0, 1, 0, 0, 0},
    };
    std::vector<Equation> out;
    for (const auto& r : rows)
        out.push_back(Equation{{r[0], r[1], r[2], r[3]}, r[4]});
    return out;
}

bool same_equations(std::span<const Equation> a, std::span<const Equation> b)
{
    if (a.size() != b.size())
        return false;
    auto key = [](const Equation& e) {
        std::vector<Rational> k = e.normalized().coefficients;
        k.push_back(e.normalized().rhs);
        return k;
    };
    std::vector<std::vector<Rational>> ka, kb;
    for (const auto& e : a)
        ka.push_back(key(e));
    for (const auto& e : b)
        kb.push_back(key(e));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

bool cohn_relation_holds()
{
    const auto req = cohn_instance();
    const PermElement f1 = mutation::expand(req.generators[0]);
    const PermElement f2 = mutation::expand(req.generators[1]);
    const PermElement lhs = mutation::expand(cohn_target());
    const PermElement rhs = PermElement::x(1) * PermElement::p() * f1 - PermElement::x(4) * PermElement::q() * f2;
    return lhs == rhs;
}

CohnInstance parse_cohn_instance(std::string_view text, const terms::TemplateRegistry& registry)
{
    CohnInstance out;
    bool have_target = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        const std::string line(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
        };
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            fail("expected 'generator: <expr>' or 'target: <expr>'");
        const std::string key = line.substr(first, line.find_last_not_of(" \t", colon - 1) + 1 - first);
        BracketPolynomial expr;
        try {
            expr = terms::parse(std::string_view(line).substr(colon + 1), registry);
        } catch (const terms::ParseError& e) {
            fail(e.what());
        }
        if (key == "generator") {
            out.request.generators.push_back(std::move(expr));
        } else if (key == "target") {
            if (have_target)
                fail("second target");
            have_target = true;
            out.target = std::move(expr);
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (!have_target || out.target.is_zero())
        throw std::invalid_argument("instance has no nonzero target");
    out.request.target = multidegree_of(out.target);
    return out;
}

}  // namespace permmut::speciality
