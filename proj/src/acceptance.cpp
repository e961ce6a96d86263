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

#include "permmut/acceptance.hpp"

#include "permmut/findim.hpp"
#include "permmut/identities.hpp"
#include "permmut/mutation.hpp"
#include "permmut/speciality.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

namespace permmut::acceptance {

namespace {

using identities::MagmaticBasis;
using terms::IdentityTemplate;

// Thrown by a check to fail its criterion with a message.
struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message)
{
    if (!ok)
        throw Failure{message};
}

std::vector<IdentityTemplate> lookup(const Options& o, std::initializer_list<const char*> names)
{
    std::vector<IdentityTemplate> out;
    for (const char* n : names)
        out.push_back(o.registry.at(n));
    return out;
}

std::string seconds_text(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, s < 10 ? "%.3f" : "%.1f", s);
    return buf;
}

// -- 1 ----------------------------------------------------------------------

std::string expansions(const Options&)
{
    const char* const pairs[][2] = {
        {"<<x1,x2>,x3>", "(p-q)*(p-q)*x1*x2*x3 + p*q*x1*[x2,x3] - q*q*x2*[x1,x3]"},
        {"<x1,<x2,x3>>", "(p-q)*(p-q)*x1*x2*x3 + p*q*x1*[x2,x3] + p*q*x2*[x1,x3] - q*q*x2*[x1,x3]"},
        {"<<x1,x2>,<x3,x4>>", "(p-q)*(p-q)*(p-q)*x1*x2*x3*x4 + (p-q)*p*q*x1*x2*[x3,x4]"
                              " + (p-q)*p*q*x1*x3*[x2,x4] - (p-q)*q*q*x2*x3*[x1,x4]"},
    };
    for (const auto& [bracket, expected] : pairs) {
        const std::string got = mutation::expand(terms::parse(bracket)).render();
        const std::string want = mutation::expand(terms::parse(expected)).render();
        require(got == want, std::string(bracket) + " expands to " + got + ", expected " + want);
    }
    return "3 expansions match";
}

// -- 2 ----------------------------------------------------------------------

std::string relations(const Options& o)
{
    const auto report = mutation::check_relations(20, o.seed);
    for (const auto& c : report.checks)
        require(c.holds, c.relation + " fails at " + c.instance + ": " + c.witness);
    return std::to_string(report.checks.size()) + " relation checks hold";
}

// -- 3 ----------------------------------------------------------------------

std::string mutation_elements(const Options&)
{
    std::size_t checked = 0;
    for (const auto& b : mutation::enumerate_B(6, 6)) {
        if (b.family != mutation::BFamily::B2 && b.family != mutation::BFamily::B3)
            continue;
        require(mutation::is_mutation_element(b.value), b.label() + " is not a mutation element");
        ++checked;
    }
    return std::to_string(checked) + " elements of B2 and B3 are mutation elements";
}

// -- 4 ----------------------------------------------------------------------

std::string basis_b(const Options&)
{
    const std::pair<unsigned, std::size_t> cases[] = {{3, 7}, {4, 13}, {5, 21}};
    std::string detail;
    for (auto [n, dim] : cases) {
        const auto r = mutation::verify_basis_B(n, n);
        require(r.ok(), "B fails at n = " + std::to_string(n) + ": " +
                            (r.failures.empty() ? std::string("?") : r.failures.front()));
        require(r.multilinear_dim == dim, "multilinear dimension " + std::to_string(r.multilinear_dim) +
                                              " at n = " + std::to_string(n) + ", expected " + std::to_string(dim));
        require(r.closure_pairs > 0, "no closure pairs checked");
        detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": dim " +
                  std::to_string(dim) + ", " + std::to_string(r.closure_pairs) + " closure pairs";
    }
    return detail;
}

// -- 5 ----------------------------------------------------------------------

std::string vanishing(const Options& o)
{
    std::vector<std::pair<std::string, terms::BracketPolynomial>> checks;
    for (const char* name : {"f", "ftilde", "wa", "flex", "hbar", "ibar", "conj4a", "conj4b"})
        checks.emplace_back(name, terms::instantiate_standard(o.registry.at(name)));
    checks.emplace_back("<circ(a,b),circ(c,d)>", terms::parse("<circ(x1,x2),circ(x3,x4)>", o.registry));
    checks.emplace_back("circ(x,y) - (p+q)[x,y]", terms::parse("circ(x1,x2) - (p+q)*[x1,x2]", o.registry));
    checks.emplace_back("linearized <<<x,x>,y>,x> - <<x,x>,<y,x>>",
                        identities::standard_form(terms::parse("<<<x,x>,y>,x> - <<x,x>,<y,x>>", o.registry)));
    for (const auto& [label, poly] : checks) {
        const auto e = mutation::expand(poly);
        require(e.is_zero(), label + " expands to " + e.render());
    }
    return std::to_string(checks.size()) + " identities expand to 0";
}

// -- 6 ----------------------------------------------------------------------

std::string degree3(const Options& o)
{
    const auto published = identities::reference_degree3_matrix();
    const std::size_t r_pub = linalg::rank(published);
    require(r_pub == 5, "reference matrix has rank " + std::to_string(r_pub));

    const auto ours = identities::degree3_identity_rows();
    auto both = published;
    for (const auto& row : ours.rows())
        both.add_row(row);
    require(linalg::rank(ours) == 5 && linalg::rank(both) == 5,
            "computed f and WA rows span a different space than the reference matrix");

    const auto kernel = identities::identity_kernel_vectors(3);
    require(kernel.size() == 5, "kernel dimension " + std::to_string(kernel.size()));

    const auto known = lookup(o, {"f", "wa"});
    const auto cons = identities::consequence_span(known, 3);
    const auto kernel_rref = linalg::rref(linalg::RationalMatrix(kernel, MagmaticBasis(3).size())).echelon.rows();
    require(cons == kernel_rref, "consequences of f and WA differ from the kernel");

    const auto report = identities::new_identities(known, 3);
    require(report.new_dim == 0, std::to_string(report.new_dim) + " new identities in degree 3");
    return "rank 5, kernel 5, consequences 5, new 0";
}

// -- 7 ----------------------------------------------------------------------

std::string small_algebra(const Options& o)
{
    const auto a = findim::load_algebra(std::string(PERMMUT_DATA_DIR) + "/prop35.alg");
    require(a == findim::f_not_wa_algebra(), "bundled prop35.alg differs from the built-in table");

    require(findim::satisfies(a, o.registry.at("f")).holds, "the algebra fails f");
    const auto wa = findim::satisfies(a, o.registry.at("wa"));
    require(!wa.holds, "the algebra satisfies WA");
    const std::vector<std::size_t> tuple{0, 0, 2};
    require(wa.witness->basis_indices == tuple, "first WA witness is " + wa.witness->render(a));
    findim::Vector minus_e1(3);
    minus_e1[0] = -1;
    require(wa.witness->value == minus_e1, "WA(e1,e1,e3) = " + wa.witness->value.render(a.names()));

    const auto lhs = terms::parse("ftilde(x,y,z)", o.registry);
    const auto rhs = terms::parse("wa(z,y,x) - wa(z,x,y) - f(z,y,x)", o.registry);
    require(terms::structural_equal(lhs, rhs), "ftilde differs from WA(z,y,x) - WA(z,x,y) - f(z,y,x)");
    return "f holds, WA" + wa.witness->render(a) + ", ftilde relation holds";
}

// -- 8 ----------------------------------------------------------------------

std::string degree4(const Options& o)
{
    const auto base = identities::new_identities(lookup(o, {"f", "wa", "hbar", "ibar"}), 4);
    require(base.new_generators == 2, std::to_string(base.new_generators) + " new identities needed in degree 4");
    const auto full = identities::new_identities(lookup(o, {"f", "wa", "hbar", "ibar", "conj4a", "conj4b"}), 4);
    require(full.new_dim == 0, std::to_string(full.new_dim) + " dimensions left with conj4a and conj4b");
    return "2 new identities (quotient dimension " + std::to_string(base.new_dim) +
           "), none after adding conj4a and conj4b";
}

// -- 9 ----------------------------------------------------------------------

std::string degree5(const Options& o)
{
    const auto known = lookup(o, {"f", "wa", "hbar", "ibar", "conj4a", "conj4b"});
    std::string detail;
    const unsigned top = o.degree6 && o.degree_limit >= 6 ? 6 : 5;
    for (unsigned n = 5; n <= top; ++n) {
        const auto r = identities::new_identities(known, n);
        require(r.consequences_in_kernel, "consequences leave the kernel in degree " + std::to_string(n));
        require(r.new_dim == 0, std::to_string(r.new_dim) + " new dimensions in degree " + std::to_string(n));
        detail += (detail.empty() ? "" : "; ") + std::string("degree ") + std::to_string(n) + ": kernel " +
                  std::to_string(r.kernel_dim) + " = consequences";
    }
    return detail;
}

// -- 10 ---------------------------------------------------------------------

std::string cohn(const Options&)
{
    require(speciality::cohn_relation_holds(), "<<x2,x3>,<x1,x4>> != x1 p f1 - x4 q f2");
    const auto r = speciality::cohn_check(speciality::cohn_instance(), speciality::cohn_target());
    require(r.ansatz.size() == 4, std::to_string(r.ansatz.size()) + " ideal elements instead of 4");
    require(r.in_perm_ideal, "target not found in the perm ideal");
    require(r.equations.size() == 12, std::to_string(r.equations.size()) + " equations instead of 12");
    const auto reference = speciality::reference_cohn_equations();
    require(speciality::same_equations(r.equations, reference), "equation system differs from the reference list");
    require(!r.in_mutation_ideal && r.certificate, "the system is solvable");
    require(r.verdict == speciality::kCertifiedVerdict, r.verdict);
    return "12 equations in 4 unknowns, inconsistent, " + r.verdict;
}

// -- 11 ---------------------------------------------------------------------

std::string lie_admissible(const Options& o)
{
    std::mt19937_64 rng(o.seed);
    const auto algebras = findim::criterion_samples(rng, o.algebras);
    std::size_t bicommutative = 0;
    for (std::size_t i = 0; i < algebras.size(); ++i) {
        const auto& a = algebras[i];
        if (findim::is_bicommutative(a).holds)
            ++bicommutative;
        for (unsigned s = 0; s < o.samples; ++s) {
            const auto p = findim::random_vector(rng, a.dim());
            const auto q = findim::random_vector(rng, a.dim());
            const auto r = findim::jacobi_test(findim::mutation_algebra(a, p, q));
            require(r.holds, "sample " + std::to_string(i) + ": Jacobi fails at p = " + p.render(a.names()) +
                                 ", q = " + q.render(a.names()) + ", " + r.witness->render(a));
        }
    }
    require(bicommutative > 0, "no bicommutative sample");
    const auto crit = terms::instantiate_standard(o.registry.at("crit36"));
    require(identities::tideal_membership(crit, lookup(o, {"bicomm_right", "bicomm_left"})),
            "the criterion does not follow from bicommutativity in degree 5");
    return std::to_string(algebras.size()) + " algebras (" + std::to_string(bicommutative) + " bicommutative) x " +
           std::to_string(o.samples) + " (p,q); criterion follows from bicommutativity";
}

// -- 12 ---------------------------------------------------------------------

std::string infrastructure(const Options& o)
{
    for (unsigned n = 1; n <= 6; ++n) {
        std::vector<perm::Generator> word;
        for (unsigned i = 1; i <= n; ++i)
            word.push_back(perm::Generator::x(i));
        std::set<std::string> seen;
        do
            seen.insert(perm::normalize_word(word).render());
        while (std::next_permutation(word.begin(), word.end()));
        require(seen.size() == n, "multilinear perm dimension " + std::to_string(seen.size()) + " for n = " +
                                      std::to_string(n));
    }
    require(MagmaticBasis(3).size() == 12 && MagmaticBasis(4).size() == 120, "wrong magmatic counts");

    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> size(1, 8), entry(-3, 3), zero(0, 2);
    for (int t = 0; t < 100; ++t) {
        const int rows = size(rng), cols = size(rng);
        std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
        for (auto& row : m)
            for (auto& x : row)
                x = zero(rng) == 0 ? 0 : entry(rng);
        const auto mat = linalg::RationalMatrix::from_dense(m);
        const auto r = linalg::rref(mat);
        require(linalg::rref(r.echelon).echelon == r.echelon, "rref is not idempotent");
        require(r.rank + linalg::kernel_basis(mat).size() == static_cast<std::size_t>(cols), "rank + nullity != cols");
    }
    return "perm dims 1..6, magmatic 12 and 120, 100 random matrices";
}

struct Criterion {
    int id;
    const char* title;
    double budget;
    unsigned degree;  // skipped when above the degree limit; 0 = always runs
    std::string (*run)(const Options&);
};

const Criterion kCriteria[] = {
    {1, "bracket expansions in degrees 3 and 4", 1, 0, expansions},
    {2, "perm relations for the mutation bracket", 1, 0, relations},
    {3, "B2 and B3 are mutation elements up to degree 6", 120, 6, mutation_elements},
    {4, "basis B of the free mutation algebra", 300, 5, basis_b},
    {5, "vanishing identities", 5, 0, vanishing},
    {6, "degree-3 identities are consequences of f and WA", 10, 3, degree3},
    {7, "3-dimensional algebra satisfying f but not WA", 1, 0, small_algebra},
    {8, "degree-4 identities beyond f, WA, hbar, ibar", 120, 4, degree4},
    {9, "degree-5 kernel equals the consequences of six identities", 1800, 5, degree5},
    {10, "exceptional homomorphic image", 5, 0, cohn},
    {11, "Lie-admissible mutations of criterion algebras", 600, 5, lie_admissible},
    {12, "infrastructure properties", 60, 6, infrastructure},
};

}  // namespace

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass:
        return "PASS";
    case Status::Fail:
        return "FAIL";
    case Status::Skipped:
        return "SKIP";
    }
    return "?";
}

std::string render(const CriterionResult& r)
{
    std::ostringstream out;
    out << to_string(r.status) << (r.id < 10 ? "   " : "  ") << r.id << "  " << r.title;
    if (r.status != Status::Skipped)
        out << " (" << seconds_text(r.seconds) << " s of " << seconds_text(r.budget_seconds) << " s)";
    if (!r.detail.empty())
        out << ": " << r.detail;
    return out.str();
}

std::vector<CriterionResult> run_all(const Options& options,
                                     const std::function<void(const CriterionResult&)>& on_result)
{
    std::vector<CriterionResult> out;
    for (const Criterion& c : kCriteria) {
        if (!options.only.empty() && !options.only.count(c.id))
            continue;
        CriterionResult r;
        r.id = c.id;
        r.title = c.title;
        r.budget_seconds = c.budget;
        if (c.degree > options.degree_limit) {
            r.status = Status::Skipped;
            r.detail = "needs degree " + std::to_string(c.degree) + ", limit is " +
                       std::to_string(options.degree_limit);
        } else {
            const auto start = std::chrono::steady_clock::now();
            try {
                r.detail = c.run(options);
                r.status = Status::Pass;
            } catch (const Failure& f) {
                r.status = Status::Fail;
                r.detail = f.message;
            } catch (const std::exception& e) {
                r.status = Status::Fail;
                r.detail = e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (r.status == Status::Pass && r.seconds > r.budget_seconds) {
                r.status = Status::Fail;
                r.detail = "over budget; " + r.detail;
            }
        }
        if (on_result)
            on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results)
{
    return std::none_of(results.begin(), results.end(),
                        [](const CriterionResult& r) { return r.status == Status::Fail; });
}

}  // namespace permmut::acceptance
