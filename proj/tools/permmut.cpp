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

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error.

#include "permmut/acceptance.hpp"
#include "permmut/findim.hpp"
#include "permmut/identities.hpp"
#include "permmut/mutation.hpp"
#include "permmut/report.hpp"
#include "permmut/speciality.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace {

using namespace permmut;
using report::Record;
using report::Report;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Global {
    std::string format = "text";
    unsigned limit = identities::kDefaultDegreeLimit;
    unsigned samples = 100;
    std::uint64_t seed = 1;
    std::string templates;
    terms::TemplateRegistry registry = terms::TemplateRegistry::builtin();
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

findim::Vector parse_vector(const std::string& text, std::size_t dim)
{
    std::vector<Rational> coords;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        coords.push_back(parse_rational(item));
    if (coords.size() != dim)
        throw findim::DimensionMismatch("vector '" + text + "' has " + std::to_string(coords.size()) +
                                        " coordinates, expected " + std::to_string(dim));
    return findim::Vector(std::move(coords));
}

std::string join(const std::vector<std::string>& items, const std::string& sep)
{
    std::string out;
    for (const auto& s : items)
        out += (out.empty() ? "" : sep) + s;
    return out;
}

std::string partition_text(const identities::Partition& p)
{
    std::vector<std::string> parts;
    for (unsigned x : p)
        parts.push_back(std::to_string(x));
    return "[" + join(parts, ",") + "]";
}

// -- expand -----------------------------------------------------------------

Report cmd_expand(const Global& g, const std::string& expr)
{
    Report r("expand");
    r.input("expr", expr);
    const auto e = mutation::expand(terms::parse(expr, g.registry));
    r.result("expansion", e.render());
    r.result("terms", e.size());
    r.line(e.render());
    return r;
}

// -- identities -------------------------------------------------------------

Report cmd_identities(const Global& g, unsigned degree, const std::string& known_list, bool reference_order,
                      unsigned show)
{
    Report r("identities");
    const auto names = split_list(known_list);
    r.input("degree", degree);
    r.input("known", names);
    if (degree == 0 || degree > g.limit)
        throw identities::LimitExceeded("degree " + std::to_string(degree) + " is outside 1.." +
                                        std::to_string(g.limit));
    std::vector<terms::IdentityTemplate> known;
    for (const auto& n : names)
        known.push_back(g.registry.at(n));

    const auto rep = identities::new_identities(known, degree);
    r.result("magmatic_count", rep.magmatic_count);
    r.result("expansion_rank", rep.expansion_rank);
    r.result("kernel_dim", rep.kernel_dim);
    r.result("consequence_dim", rep.consequence_dim);
    r.result("consequences_in_kernel", rep.consequences_in_kernel);
    r.result("new_dim", rep.new_dim);
    r.result("new_identities", rep.new_generators);
    r.result("modular_certificate", rep.modular);
    Record decomposition = Record::array();
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < rep.decomposition.partitions.size(); ++i) {
        const auto m = rep.decomposition.multiplicities[i];
        if (m == 0)
            continue;
        const auto p = partition_text(rep.decomposition.partitions[i]);
        decomposition.push_back(
            {{"partition", p}, {"multiplicity", m}, {"irreducible_dim", rep.decomposition.irreducible_dims[i]}});
        parts.push_back(std::to_string(m) + p);
    }
    r.result("decomposition", decomposition);
    Record reps = Record::array();
    for (std::size_t i = 0; i < rep.representatives.size() && i < show; ++i)
        reps.push_back(rep.representatives[i].render());
    r.result("representatives", reps);

    r.line("degree " + std::to_string(degree) + ": " + std::to_string(rep.magmatic_count) +
           " magmatic monomials, expansion rank " + std::to_string(rep.expansion_rank) + ", kernel " +
           std::to_string(rep.kernel_dim));
    r.line("consequences of {" + join(names, ", ") + "}: " + std::to_string(rep.consequence_dim) +
           (rep.consequences_in_kernel ? " (inside the kernel)" : " (NOT inside the kernel)") +
           (rep.modular ? ", rank certified mod " + std::to_string(linalg::ModularEchelon::kDefaultPrime) : ""));
    r.line("new identities: " + std::to_string(rep.new_generators) + " (quotient dimension " +
           std::to_string(rep.new_dim) + ")");
    if (!parts.empty())
        r.line("quotient as a module over S" + std::to_string(degree) + ": " + join(parts, " + "));
    for (const auto& s : reps)
        r.line("  " + s.get<std::string>());

    if (reference_order) {
        if (degree != 3)
            throw std::invalid_argument("--paper-order applies to degree 3 only");
        const identities::MagmaticBasis basis(3, identities::MagmaticOrder::Reference);
        std::vector<std::string> header;
        for (std::size_t i = 0; i < basis.size(); ++i)
            header.push_back(basis.letter_label(i));
        linalg::RationalMatrix rows(basis.size(), header);
        std::vector<std::string> perm{"x1", "x2", "x3"};
        for (const auto& t : known) {
            if (t.arity() != 3)
                continue;
            std::sort(perm.begin(), perm.end());
            do
                rows.add_row(basis.to_vector(terms::instantiate(t, std::span<const std::string>(perm))));
            while (std::next_permutation(perm.begin(), perm.end()));
        }
        Record matrix = Record::array();
        r.line("rows in the reference column order " + join(header, " ") + ":");
        for (const auto& row : rows.to_dense()) {
            std::vector<std::string> cells;
            for (const auto& c : row)
                cells.push_back(permmut::to_string(c));
            matrix.push_back(cells);
            r.line("  " + join(cells, " "));
        }
        const auto rank = linalg::rank(rows);
        r.line("rank " + std::to_string(rank));
        r.result("reference_columns", header);
        r.result("reference_rows", matrix);
        r.result("reference_rank", rank);
    }
    return r;
}

// -- cohn -------------------------------------------------------------------

Report cmd_cohn(const Global& g, const std::string& instance_file, const std::vector<std::string>& generators,
                const std::string& target)
{
    Report r("cohn");
    speciality::CohnInstance inst;
    bool is_default = false;
    if (!instance_file.empty()) {
        inst = speciality::parse_cohn_instance(read_file(instance_file), g.registry);
        r.input("instance", instance_file);
    } else if (!target.empty() || !generators.empty()) {
        if (target.empty())
            throw std::invalid_argument("--generator needs --target");
        std::string text;
        if (generators.empty())
            for (const auto& x : speciality::cohn_instance().generators)
                text += "generator: " + x.render() + "\n";
        for (const auto& s : generators)
            text += "generator: " + s + "\n";
        text += "target: " + target + "\n";
        inst = speciality::parse_cohn_instance(text, g.registry);
    } else {
        inst = {speciality::cohn_instance(), speciality::cohn_target()};
        is_default = true;
    }
    std::vector<std::string> gens;
    for (const auto& x : inst.request.generators)
        gens.push_back(x.render());
    r.input("generators", gens);
    r.input("target", inst.target.render());

    const auto c = speciality::cohn_check(inst.request, inst.target);
    Record ansatz = Record::array();
    r.line("target " + inst.target.render() + " over " + perm::to_string(inst.request.target));
    for (std::size_t i = 0; i < c.ansatz.size(); ++i) {
        ansatz.push_back(c.ansatz[i].render());
        r.line("  λ" + std::to_string(i + 1) + ": " + c.ansatz[i].render());
    }
    r.line(std::to_string(c.equations.size()) + " equations in " + std::to_string(c.ansatz.size()) + " unknowns:");
    Record eqs = Record::array();
    for (std::size_t i = 0; i < c.equations.size(); ++i) {
        const auto mono = c.equation_monomials[i].render();
        eqs.push_back({{"monomial", mono}, {"equation", c.equations[i].render()}});
        r.line("  [" + mono + "]  " + c.equations[i].render());
    }
    r.line(std::string("in perm ideal: ") + (c.in_perm_ideal ? "yes" : "no"));
    r.line(std::string("in mutation ideal: ") + (c.in_mutation_ideal ? "yes" : "no"));
    if (is_default) {
        const bool same = speciality::same_equations(c.equations, speciality::reference_cohn_equations());
        r.result("matches_reference_system", same);
        r.line(std::string("matches the reference system: ") + (same ? "yes" : "no"));
    }
    r.line("verdict: " + c.verdict);
    r.result("ansatz", ansatz);
    r.result("equations", eqs);
    r.result("in_perm_ideal", c.in_perm_ideal);
    r.result("in_mutation_ideal", c.in_mutation_ideal);
    if (c.certificate)
        r.result("inconsistency_certificate", linalg::to_string(*c.certificate));
    r.result("verdict", c.verdict);
    return r;
}

// -- findim -----------------------------------------------------------------

Record witness_record(const findim::FiniteAlgebra& a, const findim::Witness& w)
{
    std::vector<std::string> tuple;
    for (auto i : w.basis_indices)
        tuple.push_back(a.names()[i]);
    return {{"variables", w.variables}, {"tuple", tuple}, {"value", w.value.render(a.names())}};
}

void add_verdict(Report& r, const findim::FiniteAlgebra& a, const std::string& label, const findim::CheckResult& c)
{
    r.result("holds", c.holds);
    if (c.holds) {
        r.line(label + ": yes");
    } else {
        r.result("witness", witness_record(a, *c.witness));
        r.line(label + ": no, witness " + c.witness->render(a));
    }
}

Report cmd_findim(const Global& g, const std::string& file, const std::string& check,
                  const std::vector<std::string>& args)
{
    Report r("findim");
    r.input("file", file);
    r.input("check", check);
    r.input("args", args);
    const auto a = findim::load_algebra(file);

    std::optional<findim::MutationParams> params;
    if (args.size() == 2)
        params = findim::MutationParams{parse_vector(args[0], a.dim()), parse_vector(args[1], a.dim())};
    else if (!args.empty())
        throw std::invalid_argument("expected two vectors p q, got " + std::to_string(args.size()) + " arguments");

    if (check == "criterion") {
        add_verdict(r, a, "criterion", findim::lie_admissible_criterion(a));
    } else if (check == "jacobi") {
        add_verdict(r, a, "jacobi", findim::jacobi_test(params ? findim::mutation_algebra(a, params->p, params->q) : a));
    } else if (check == "bicommutative") {
        add_verdict(r, a, "bicommutative", findim::is_bicommutative(a));
    } else if (check == "mutate") {
        if (!params)
            throw std::invalid_argument("mutate needs p and q");
        const auto m = findim::mutation_algebra(a, params->p, params->q);
        r.result("algebra", Record::parse(findim::serialize_algebra(m)));
        std::istringstream text(findim::serialize_algebra(m));
        for (std::string l; std::getline(text, l);)
            r.line(l);
        add_verdict(r, m, "jacobi", findim::jacobi_test(m));
    } else if (check == "falsify") {
        add_verdict(r, a, "criterion", findim::lie_admissible_criterion(a));
        std::mt19937_64 rng(g.seed);
        const auto f = findim::falsify_lie_admissibility(a, rng, g.samples);
        r.input("samples", g.samples);
        r.input("seed", g.seed);
        if (f) {
            r.result("falsified", {{"p", f->p.render(a.names())},
                                   {"q", f->q.render(a.names())},
                                   {"witness", witness_record(a, f->witness)}});
            r.line("jacobi fails for p = " + f->p.render(a.names()) + ", q = " + f->q.render(a.names()) + " at " +
                   f->witness.render(a));
        } else {
            r.result("falsified", nullptr);
            r.line("no failing (p, q) in " + std::to_string(g.samples) + " samples");
        }
    } else {
        add_verdict(r, a, check, findim::satisfies(a, g.registry.at(check), params));
    }
    return r;
}

// -- verify-paper -----------------------------------------------------------

Report cmd_verify(const Global& g, const std::vector<int>& only, bool degree6, unsigned algebras, bool stream)
{
    Report r("verify-paper");
    acceptance::Options o;
    o.degree_limit = g.limit;
    o.degree6 = degree6;
    o.samples = g.samples;
    o.algebras = algebras;
    o.seed = g.seed;
    o.registry = g.registry;
    o.only = {only.begin(), only.end()};
    r.input("limit", g.limit);
    r.input("samples", g.samples);
    r.input("seed", g.seed);
    r.input("degree6", degree6);

    const auto results = acceptance::run_all(o, [&](const acceptance::CriterionResult& c) {
        if (stream)
            std::cout << acceptance::render(c) << std::endl;
        else
            r.line(acceptance::render(c));
    });
    Record list = Record::array();
    for (const auto& c : results)
        list.push_back({{"id", c.id},
                        {"title", c.title},
                        {"status", acceptance::to_string(c.status)},
                        {"detail", c.detail},
                        {"seconds", c.seconds},
                        {"budget_seconds", c.budget_seconds}});
    r.result("criteria", list);
    if (!acceptance::all_passed(results))
        r.fail();
    return r;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"permmut: free perm algebras, their (p,q)-mutations and polynomial identities"};
    app.fallthrough();
    app.require_subcommand(1);
    Global g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "record"}));
    app.add_option("--limit", g.limit, "Largest degree the identity and basis engines may use")
        ->check(CLI::Range(1u, identities::kDefaultDegreeLimit));
    app.add_option("--samples", g.samples, "Random (p,q) samples for randomized checks");
    app.add_option("--seed", g.seed, "Seed for randomized checks");
    app.add_option("--templates", g.templates, "File of template definitions 'name(a,b) = body'")
        ->check(CLI::ExistingFile);

    auto* expand = app.add_subcommand("expand", "Expand a bracket expression in the free perm algebra");
    std::string expr;
    expand->add_option("expr", expr, "Expression, e.g. '<<x1,x2>,x3>'")->required();

    auto* ids = app.add_subcommand("identities", "Compare the identity kernel with known consequences");
    unsigned degree = 3;
    std::string known;
    bool paper_order = false;
    unsigned show = 5;
    ids->add_option("--degree", degree, "Multilinear degree")->required();
    ids->add_option("--known", known, "Comma-separated template names");
    ids->add_flag("--paper-order", paper_order, "Also print the degree-3 rows in the reference column order");
    ids->add_option("--show", show, "Number of new-identity representatives to print");

    auto* cohn = app.add_subcommand("cohn", "Exceptional-image certificate for a quotient by an ideal");
    std::string instance;
    std::vector<std::string> generators;
    std::string target;
    cohn->add_option("--instance", instance, "Instance file")->check(CLI::ExistingFile);
    cohn->add_option("--generator", generators, "Ideal generator (repeatable; default: the bundled instance)");
    cohn->add_option("--target", target, "Target element");

    auto* fd = app.add_subcommand("findim", "Checks on a finite-dimensional algebra");
    std::string file, check;
    std::vector<std::string> check_args;
    fd->add_option("file", file, "Algebra file")->required()->check(CLI::ExistingFile);
    fd->add_option("check", check, "Template name, criterion, jacobi, bicommutative, mutate or falsify")->required();
    fd->add_option("args", check_args, "p and q as comma-separated coordinates");

    auto* verify = app.add_subcommand("verify-paper", "Run every acceptance criterion");
    std::vector<int> only;
    bool degree6 = false;
    unsigned algebras = 20;
    verify->add_option("--only", only, "Criterion numbers to run")->delimiter(',');
    verify->add_flag("--degree6", degree6, "Also compare kernel and consequences in degree 6");
    verify->add_option("--algebras", algebras, "Random criterion algebras");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (!g.templates.empty())
            g.registry.load(read_file(g.templates));

        const bool record = g.format == "record";
        Report r("");
        if (*expand)
            r = cmd_expand(g, expr);
        else if (*ids)
            r = cmd_identities(g, degree, known, paper_order, show);
        else if (*cohn)
            r = cmd_cohn(g, instance, generators, target);
        else if (*fd)
            r = cmd_findim(g, file, check, check_args);
        else
            r = cmd_verify(g, only, degree6, algebras, !record);

        r.set_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        if (record)
            std::cout << r.record().dump(2) << "\n";
        else
            std::cout << r.text();
        return r.ok() ? kExitOk : kExitFailure;
    } catch (const identities::NotAnIdentity& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const terms::ParseError& e) {
        std::cerr << "parse error at " << e.position() << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const findim::AlgebraFormatError& e) {
        std::cerr << "algebra file: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
