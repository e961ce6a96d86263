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

#include "permmut/identities.hpp"
#include "permmut/mutation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace permmut::identities {

using perm::Generator;
using perm::PermElement;
using perm::PermMonomial;

namespace {

// x<i> names first in index order, everything else after in string order.
bool variable_less(const std::string& a, const std::string& b)
{
    auto ga = Generator::parse(a);
    auto gb = Generator::parse(b);
    const bool xa = ga && ga->is_variable();
    const bool xb = gb && gb->is_variable();
    if (xa != xb)
        return xa;
    if (xa)
        return ga->index() < gb->index();
    return a < b;
}

// Renames x_k -> x_sigma[k-1] in a perm monomial.
PermMonomial relabel_monomial(const PermMonomial& m, std::span<const std::uint8_t> sigma)
{
    auto map = [&](Generator g) { return g.is_variable() ? Generator::x(sigma[g.index() - 1]) : g; };
    std::vector<Generator> prefix;
    prefix.reserve(m.prefix().size());
    for (Generator g : m.prefix())
        prefix.push_back(map(g));
    return PermMonomial(std::move(prefix), map(m.tail()));
}

SparseVector relabel_vector(const SparseVector& v, const MagmaticBasis& basis, std::span<const std::uint8_t> sigma)
{
    std::vector<SparseVector::Entry> entries;
    entries.reserve(v.nnz());
    for (const auto& [i, c] : v)
        entries.emplace_back(*basis.index(relabel(basis.code(i), sigma)), c);
    return SparseVector(std::move(entries));
}

enum class Lift : std::uint8_t { Right, Left, SubstituteRight, SubstituteLeft };

// Lifts a degree-(d-1) monomial code to degree d with the new variable d.
Code lift_code(const Code& c, Lift kind, std::uint8_t var, std::uint8_t d)
{
    Code out;
    out.reserve(c.size() + 2);
    switch (kind) {
    case Lift::Right:
        out.push_back(0);
        out.insert(out.end(), c.begin(), c.end());
        out.push_back(d);
        break;
    case Lift::Left:
        out.push_back(0);
        out.push_back(d);
        out.insert(out.end(), c.begin(), c.end());
        break;
    case Lift::SubstituteRight:
    case Lift::SubstituteLeft:
        for (auto t : c) {
            if (t != var) {
                out.push_back(t);
                continue;
            }
            out.push_back(0);
            out.push_back(kind == Lift::SubstituteRight ? var : d);
            out.push_back(kind == Lift::SubstituteRight ? d : var);
        }
        break;
    }
    return out;
}

SparseVector lift_vector(const SparseVector& v, const MagmaticBasis& from, const MagmaticBasis& to, Lift kind,
                         std::uint8_t var)
{
    const auto d = static_cast<std::uint8_t>(to.degree());
    std::vector<SparseVector::Entry> entries;
    entries.reserve(v.nnz());
    for (const auto& [i, c] : v)
        entries.emplace_back(*to.index(lift_code(from.code(i), kind, var, d)), c);
    return SparseVector(std::move(entries));
}

std::vector<std::vector<std::uint8_t>> all_permutations(unsigned n)
{
    std::vector<std::uint8_t> p(n);
    std::iota(p.begin(), p.end(), std::uint8_t{1});
    std::vector<std::vector<std::uint8_t>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::optional<std::size_t> saturation_at(const ConsequenceOptions& o, unsigned d)
{
    return d < o.saturation.size() ? o.saturation[d] : std::nullopt;
}

BracketPolynomial standard_instance(const terms::IdentityTemplate& t)
{
    return standard_form(instantiate_standard(t));
}

}  // namespace

BracketPolynomial standard_form(const BracketPolynomial& poly)
{
    BracketPolynomial m = terms::multilinearize(poly);
    if (!m.is_multilinear())
        throw std::invalid_argument("polynomial is not homogeneous: " + poly.render());
    auto vars_set = m.variables();
    std::vector<std::string> vars(vars_set.begin(), vars_set.end());
    std::sort(vars.begin(), vars.end(), variable_less);
    std::map<std::string, std::string> names;
    for (std::size_t i = 0; i < vars.size(); ++i)
        names.emplace(vars[i], "x" + std::to_string(i + 1));
    return terms::rename(m, names);
}

perm::MonomialIndex expansion_columns(unsigned n)
{
    perm::Multidegree m;
    for (std::uint32_t i = 1; i <= n; ++i)
        m[i] = 1;
    return mutation::graded_columns(m);
}

linalg::RationalMatrix expansion_matrix(unsigned n, MagmaticOrder order)
{
    const MagmaticBasis basis(n, order);
    const perm::MonomialIndex columns = expansion_columns(n);

    // Each shape is expanded once at x1..xn and relabelled per permutation.
    std::map<Code, PermElement> shape_expansion;
    std::vector<SparseVector> rows;
    rows.reserve(basis.size());
    for (const Code& c : basis.codes()) {
        Code shape = c;
        std::vector<std::uint8_t> sigma;
        std::uint8_t leaf = 0;
        for (auto& t : shape)
            if (t != 0) {
                sigma.push_back(t);
                t = ++leaf;
            }
        auto it = shape_expansion.find(shape);
        if (it == shape_expansion.end())
            it = shape_expansion.emplace(shape, mutation::expand(term_of(shape))).first;
        std::vector<SparseVector::Entry> entries;
        for (const auto& [m, coeff] : it->second.terms())
            entries.emplace_back(*columns.find(relabel_monomial(m, sigma)), coeff);
        rows.emplace_back(std::move(entries));
    }
    return linalg::RationalMatrix(std::move(rows), columns.size(), columns.labels());
}

std::vector<SparseVector> identity_kernel_vectors(unsigned n)
{
    return linalg::kernel_basis(expansion_matrix(n).transpose());
}

std::vector<BracketPolynomial> identity_kernel(unsigned n)
{
    const MagmaticBasis basis(n);
    std::vector<BracketPolynomial> out;
    for (const auto& v : identity_kernel_vectors(n))
        out.push_back(basis.to_polynomial(v));
    return out;
}

namespace {

using SeedMap = std::map<unsigned, std::vector<BracketPolynomial>>;

SeedMap group_seeds(std::span<const BracketPolynomial> identities, unsigned n)
{
    SeedMap seeds;
    for (const auto& id : identities) {
        if (id.is_zero())
            continue;
        BracketPolynomial s = standard_form(id);
        const unsigned k = static_cast<unsigned>(s.variables().size());
        if (k > n)
            throw std::invalid_argument("identity degree " + std::to_string(k) + " exceeds " + std::to_string(n));
        seeds[k].push_back(std::move(s));
    }
    return seeds;
}

// Feeds one degree: the lifts of the previous rows, then the seeds of this
// degree, each closed under permutations. Stops once full() holds.
template <class Insert, class Full>
void grow_degree(const std::vector<SparseVector>& rows, const MagmaticBasis* previous, const MagmaticBasis& basis,
                 const std::vector<BracketPolynomial>* seeds, const ConsequenceOptions& options, Insert insert,
                 Full full)
{
    const auto d = static_cast<std::uint8_t>(basis.degree());
    if (previous) {
        // The previous span is closed under permutations of x1..x(d-1),
        // so coset representatives of S_d / S_(d-1) suffice.
        std::vector<std::vector<std::uint8_t>> cosets;
        std::vector<std::uint8_t> id(d);
        std::iota(id.begin(), id.end(), std::uint8_t{1});
        cosets.push_back(id);
        if (options.permutation_closure)
            for (std::uint8_t i = 1; i < d; ++i) {
                auto t = id;
                std::swap(t[i - 1], t[d - 1]);
                cosets.push_back(std::move(t));
            }
        for (const auto& row : rows) {
            std::vector<SparseVector> lifted;
            lifted.push_back(lift_vector(row, *previous, basis, Lift::Right, 0));
            lifted.push_back(lift_vector(row, *previous, basis, Lift::Left, 0));
            for (std::uint8_t v = 1; v < d; ++v) {
                lifted.push_back(lift_vector(row, *previous, basis, Lift::SubstituteRight, v));
                lifted.push_back(lift_vector(row, *previous, basis, Lift::SubstituteLeft, v));
            }
            for (const auto& l : lifted)
                for (const auto& sigma : cosets) {
                    if (full())
                        return;
                    insert(relabel_vector(l, basis, sigma));
                }
        }
    }
    if (!seeds)
        return;
    std::vector<std::vector<std::uint8_t>> perms;
    if (options.permutation_closure) {
        perms = all_permutations(d);
    } else {
        perms.emplace_back(d);
        std::iota(perms[0].begin(), perms[0].end(), std::uint8_t{1});
    }
    for (const auto& s : *seeds) {
        const SparseVector v = basis.to_vector(s, options.kind);
        for (const auto& sigma : perms) {
            if (full())
                return;
            insert(relabel_vector(v, basis, sigma));
        }
    }
}

MagmaticBasis basis_for(unsigned d, unsigned n)
{
    return MagmaticBasis(d, MagmaticOrder::Canonical, std::max(n, kDefaultDegreeLimit));
}

// Exact RREF rows at degree top, and the basis they refer to.
std::vector<SparseVector> exact_rows(const SeedMap& seeds, unsigned top, unsigned n, const ConsequenceOptions& options)
{
    std::optional<MagmaticBasis> previous;
    std::vector<SparseVector> rows;
    for (unsigned d = seeds.begin()->first; d <= top; ++d) {
        MagmaticBasis basis = basis_for(d, n);
        linalg::EchelonBasis span(basis.size());
        const auto bound = saturation_at(options, d);
        const auto it = seeds.find(d);
        grow_degree(
            rows, previous ? &*previous : nullptr, basis, it == seeds.end() ? nullptr : &it->second, options,
            [&](const SparseVector& v) { span.insert(v); }, [&] { return bound && span.rank() >= *bound; });
        rows = span.rows();
        previous.emplace(std::move(basis));
    }
    return rows;
}

}  // namespace

std::vector<SparseVector> consequence_span(std::span<const BracketPolynomial> identities, unsigned n,
                                           const ConsequenceOptions& options)
{
    const SeedMap seeds = group_seeds(identities, n);
    if (seeds.empty())
        return {};
    return exact_rows(seeds, n, n, options);
}

ModularConsequences consequence_rank_modular(std::span<const BracketPolynomial> identities, unsigned n,
                                             const ConsequenceOptions& options)
{
    const SeedMap seeds = group_seeds(identities, n);
    ModularConsequences out;
    if (seeds.empty())
        return out;

    std::vector<SparseVector> rows;
    std::optional<MagmaticBasis> previous;
    if (seeds.begin()->first < n) {
        rows = exact_rows(seeds, n - 1, n, options);
        previous.emplace(basis_for(n - 1, n));
    }
    const MagmaticBasis basis = basis_for(n, n);
    linalg::ModularEchelon span(basis.size());
    out.prime = span.prime();
    const auto bound = saturation_at(options, n);
    const auto it = seeds.find(n);
    grow_degree(
        rows, previous ? &*previous : nullptr, basis, it == seeds.end() ? nullptr : &it->second, options,
        [&](SparseVector v) {
            if (span.insert(v))
                out.generators.push_back(std::move(v));
        },
        [&] { return bound && span.rank() >= *bound; });
    out.rank = span.rank();
    return out;
}

std::vector<SparseVector> consequence_span(std::span<const terms::IdentityTemplate> identities, unsigned n,
                                           const ConsequenceOptions& options)
{
    std::vector<BracketPolynomial> polys;
    for (const auto& t : identities)
        polys.push_back(instantiate_standard(t));
    return consequence_span(polys, n, options);
}

NotAnIdentity::NotAnIdentity(std::string name, perm::PermElement witness)
    : std::runtime_error("'" + name + "' is not an identity: it expands to " + witness.render()),
      name_(std::move(name)),
      witness_(std::move(witness))
{
}

NewIdentitiesReport new_identities(std::span<const terms::IdentityTemplate> known, unsigned n)
{
    NewIdentitiesReport report;
    report.degree = n;

    std::vector<BracketPolynomial> polys;
    for (const auto& t : known) {
        BracketPolynomial s = standard_instance(t);
        PermElement e = mutation::expand(s);
        if (!e.is_zero())
            throw NotAnIdentity(t.name, std::move(e));
        polys.push_back(std::move(s));
    }

    // Kernel dimensions bound every intermediate degree of the generation.
    ConsequenceOptions options;
    options.saturation.resize(n + 1);
    linalg::RationalMatrix expansion(0);
    for (unsigned d = 1; d <= n; ++d) {
        linalg::RationalMatrix e = expansion_matrix(d);
        options.saturation[d] = e.row_count() - linalg::rank(e);
        if (d == n)
            expansion = std::move(e);
    }

    const std::vector<SparseVector> kernel = linalg::kernel_basis(expansion.transpose());
    report.magmatic_count = expansion.row_count();
    report.kernel_dim = kernel.size();
    report.expansion_rank = report.magmatic_count - report.kernel_dim;

    if (n >= kModularDegree) {
        // rank_Q >= rank_p, so hitting the kernel dimension mod p settles
        // equality once the generators are checked to lie in the kernel.
        const auto mod = consequence_rank_modular(polys, n, options);
        report.consequences_in_kernel =
            std::all_of(mod.generators.begin(), mod.generators.end(),
                        [&](const SparseVector& r) { return expansion.left_apply(r).empty(); });
        if (report.consequences_in_kernel && mod.rank == report.kernel_dim) {
            report.consequence_dim = mod.rank;
            report.modular = true;
            return report;
        }
    }

    const std::vector<SparseVector> consequences = consequence_span(polys, n, options);
    report.consequence_dim = consequences.size();
    report.consequences_in_kernel = std::all_of(consequences.begin(), consequences.end(), [&](const SparseVector& r) {
        return expansion.left_apply(r).empty();
    });

    linalg::EchelonBasis combined(expansion.row_count());
    for (const auto& r : consequences)
        combined.insert(r);
    const auto pivots = combined.pivot_columns();
    const std::set<std::size_t> consequence_pivots(pivots.begin(), pivots.end());
    for (const auto& k : kernel)
        combined.insert(k);
    report.new_dim = combined.rank() - report.consequence_dim;
    report.decomposition = quotient_decomposition(MagmaticBasis(n), kernel, consequences);
    report.new_generators = report.decomposition.min_generators;

    const MagmaticBasis basis(n);
    const auto rows = combined.rows();
    const auto all_pivots = combined.pivot_columns();
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!consequence_pivots.contains(all_pivots[i]))
            report.representatives.push_back(basis.to_polynomial(rows[i]));
    return report;
}

std::vector<Partition> partitions(unsigned n)
{
    std::vector<Partition> out;
    Partition cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned max_part) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned k = std::min(left, max_part); k >= 1; --k) {
            cur.push_back(k);
            rec(left - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

long long sn_character(const Partition& lambda, const Partition& mu)
{
    // Murnaghan-Nakayama on beta-sets: removing a rim hook of length r moves a
    // bead from b to b - r; the sign counts the beads jumped over.
    std::vector<unsigned> beta;
    const std::size_t len = lambda.size();
    for (std::size_t i = 0; i < len; ++i)
        beta.push_back(lambda[i] + static_cast<unsigned>(len - 1 - i));
    std::function<long long(std::set<unsigned>&, std::size_t)> rec = [&](std::set<unsigned>& beads,
                                                                        std::size_t k) -> long long {
        if (k == mu.size())
            return 1;
        const unsigned r = mu[k];
        long long total = 0;
        const std::vector<unsigned> snapshot(beads.begin(), beads.end());
        for (unsigned b : snapshot) {
            if (b < r || beads.contains(b - r))
                continue;
            const auto jumped = std::distance(beads.upper_bound(b - r), beads.lower_bound(b));
            beads.erase(b);
            beads.insert(b - r);
            total += (jumped % 2 ? -1 : 1) * rec(beads, k + 1);
            beads.erase(b - r);
            beads.insert(b);
        }
        return total;
    };
    std::set<unsigned> beads(beta.begin(), beta.end());
    return rec(beads, 0);
}

namespace {

// A permutation of 1..n with the given cycle type.
std::vector<std::uint8_t> permutation_of_type(const Partition& mu)
{
    std::vector<std::uint8_t> sigma;
    std::uint8_t start = 1;
    for (unsigned len : mu) {
        for (unsigned i = 0; i < len; ++i)
            sigma.push_back(static_cast<std::uint8_t>(start + (i + 1) % len));
        start = static_cast<std::uint8_t>(start + len);
    }
    return sigma;
}

// |centralizer| of an element of cycle type mu.
std::size_t centralizer(const Partition& mu)
{
    std::map<unsigned, unsigned> counts;
    for (unsigned m : mu)
        ++counts[m];
    std::size_t z = 1;
    for (const auto& [len, c] : counts) {
        for (unsigned i = 0; i < c; ++i)
            z *= len;
        z *= factorial(c);
    }
    return z;
}

// Trace of sigma on span(rows), rows in reduced echelon form.
Rational trace(const MagmaticBasis& basis, const linalg::EchelonBasis& span, std::span<const std::uint8_t> sigma)
{
    Rational t = 0;
    const auto rows = span.rows();
    const auto pivots = span.pivot_columns();
    for (std::size_t i = 0; i < rows.size(); ++i)
        t += relabel_vector(rows[i], basis, sigma).at(pivots[i]);
    return t;
}

}  // namespace

ModuleDecomposition quotient_decomposition(const MagmaticBasis& basis, std::span<const SparseVector> outer,
                                           std::span<const SparseVector> inner)
{
    const unsigned n = basis.degree();
    linalg::EchelonBasis big(basis.size()), small(basis.size());
    for (const auto& v : outer)
        big.insert(v);
    for (const auto& v : inner)
        small.insert(v);

    const auto classes = partitions(n);
    std::vector<Rational> chi;
    for (const auto& mu : classes) {
        const auto sigma = permutation_of_type(mu);
        chi.push_back(trace(basis, big, sigma) - trace(basis, small, sigma));
    }

    ModuleDecomposition out;
    const Partition identity_class(n, 1);
    for (const auto& lambda : classes) {
        Rational m = 0;
        for (std::size_t c = 0; c < classes.size(); ++c)
            m += chi[c] * Rational(static_cast<long>(sn_character(lambda, classes[c]))) /
                 Rational(static_cast<unsigned long>(centralizer(classes[c])));
        if (m.get_den() != 1 || m < 0)
            throw std::logic_error("quotient is not a permutation-stable subquotient");
        const auto mult = static_cast<std::size_t>(m.get_num().get_ui());
        const auto dim = static_cast<std::size_t>(sn_character(lambda, identity_class));
        out.partitions.push_back(lambda);
        out.multiplicities.push_back(mult);
        out.irreducible_dims.push_back(dim);
        out.min_generators = std::max(out.min_generators, (mult + dim - 1) / dim);
    }
    return out;
}

bool tideal_membership(const BracketPolynomial& target, std::span<const terms::IdentityTemplate> defining)
{
    if (target.is_zero())
        return true;
    const BracketPolynomial t = standard_form(target);
    std::set<NodeKind> kinds = t.node_kinds();
    std::vector<BracketPolynomial> polys;
    for (const auto& d : defining) {
        polys.push_back(instantiate_standard(d));
        kinds.merge(polys.back().node_kinds());
    }
    if (kinds.size() > 1)
        throw std::invalid_argument("mixed node kinds");
    const NodeKind kind = kinds.empty() ? NodeKind::Bracket : *kinds.begin();
    const unsigned n = static_cast<unsigned>(t.variables().size());

    ConsequenceOptions options;
    options.kind = kind;
    const auto rows = consequence_span(polys, n, options);
    const MagmaticBasis basis(n, MagmaticOrder::Canonical, std::max(n, kDefaultDegreeLimit));
    return linalg::in_span(rows, basis.to_vector(t, kind)).member;
}

linalg::RationalMatrix reference_degree3_matrix()
{
    static const int data[12][12] = {
        {0, 0, 0, 0, 0, 0, 1, -1, -1, 1, 1, -1},   {0, 0, 0, 0, 0, 0, -1, 1, 1, -1, -1, 1},
        {0, 0, 0, 0, 0, 0, -1, 1, 1, -1, -1, 1},   {0, 0, 0, 0, 0, 0, 1, -1, -1, 1, 1, -1},
        {0, 0, 0, 0, 0, 0, 1, -1, -1, 1, 1, -1},   {0, 0, 0, 0, 0, 0, -1, 1, 1, -1, -1, 1},
        {0, 0, 0, -1, -1, 1, 0, 0, 0, 1, 1, -1},   {0, 0, -1, 1, 0, -1, 0, 0, 1, -1, 0, 1},
        {0, -1, 0, 0, 1, -1, 0, 1, 0, 0, -1, 1},   {-1, 1, 0, 0, -1, 0, 1, -1, 0, 0, 1, 0},
        {-1, 0, 1, -1, 0, 0, 1, 0, -1, 1, 0, 0},   {1, -1, -1, 0, 0, 0, -1, 1, 1, 0, 0, 0},
    };
    std::vector<std::vector<Rational>> rows(12, std::vector<Rational>(12));
    for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c)
            rows[r][c] = data[r][c];
    return linalg::RationalMatrix::from_dense(rows);
}

linalg::RationalMatrix degree3_identity_rows()
{
    const MagmaticBasis basis(3, MagmaticOrder::Reference);
    const auto& registry = terms::TemplateRegistry::builtin();
    linalg::RationalMatrix m(basis.size());
    for (const char* name : {"f", "wa"})
        for (const auto& sigma : all_permutations(3)) {
            std::vector<std::string> args;
            for (auto s : sigma)
                args.push_back("x" + std::to_string(s));
            m.add_row(basis.to_vector(instantiate(registry.at(name), args)));
        }
    return m;
}

}  // namespace permmut::identities
