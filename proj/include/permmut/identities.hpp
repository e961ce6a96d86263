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

// Multilinear identities of the mutation algebra: magmatic monomials, the
// expansion matrix into the free perm algebra, its left kernel, and the
// multilinear T-ideal generated by a set of identities.

#ifndef PERMMUT_IDENTITIES_HPP
#define PERMMUT_IDENTITIES_HPP

#include "permmut/linalg.hpp"
#include "permmut/perm.hpp"
#include "permmut/terms.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace permmut::identities {

using linalg::SparseVector;
using terms::BracketPolynomial;
using terms::NodeKind;

/// Prefix code of a multilinear tree: 0 is an internal node, k >= 1 the leaf x_k.
using Code = std::vector<std::uint8_t>;

enum class MagmaticOrder : std::uint8_t {
    /// Shapes by left-subtree size (recursively), then permutations lexicographically.
    Canonical,
    /// The listing a(bc), a(cb), b(ac), b(ca), c(ab), c(ba), (ab)c, ..., (cb)a; degree 3 only.
    Reference,
};

class LimitExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

constexpr unsigned kDefaultDegreeLimit = 6;

/// Multilinear magmatic monomials in x1..xn: n! * Catalan(n-1) of them.
class MagmaticBasis {
public:
    explicit MagmaticBasis(unsigned n, MagmaticOrder order = MagmaticOrder::Canonical,
                           unsigned limit = kDefaultDegreeLimit);

    [[nodiscard]] unsigned degree() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return codes_.size(); }
    [[nodiscard]] const Code& code(std::size_t i) const { return codes_.at(i); }
    [[nodiscard]] const std::vector<Code>& codes() const noexcept { return codes_; }
    [[nodiscard]] std::optional<std::size_t> index(const Code& c) const;
    [[nodiscard]] std::size_t shape_count() const noexcept { return shapes_; }

    [[nodiscard]] terms::BracketTerm term(std::size_t i, NodeKind kind = NodeKind::Bracket) const;
    /// "<x1,<x2,x3>>" for brackets.
    [[nodiscard]] std::string label(std::size_t i) const;
    /// Juxtaposition with letters a, b, c, ..., e.g. "a(bc)".
    [[nodiscard]] std::string letter_label(std::size_t i) const;

    /// Coordinates of a multilinear polynomial in x1..xn whose nodes all have
    /// the given kind. Throws std::invalid_argument otherwise.
    [[nodiscard]] SparseVector to_vector(const BracketPolynomial& poly, NodeKind kind = NodeKind::Bracket) const;
    [[nodiscard]] BracketPolynomial to_polynomial(const SparseVector& v, NodeKind kind = NodeKind::Bracket) const;

private:
    unsigned n_;
    std::size_t shapes_ = 0;
    std::vector<Code> codes_;
    std::unordered_map<std::string, std::size_t> index_;
};

std::size_t catalan(unsigned k);
std::size_t factorial(unsigned k);

Code code_of(const terms::BracketTerm& t);
terms::BracketTerm term_of(const Code& c, NodeKind kind = NodeKind::Bracket);
/// Replaces every leaf k by sigma[k - 1].
Code relabel(const Code& c, std::span<const std::uint8_t> sigma);

/// Multilinearizes and renames the variables, in sorted order, to x1..xk.
BracketPolynomial standard_form(const BracketPolynomial& poly);

/// Columns of the expansion matrix: multilinear monomials in x1..xn with n-1
/// parameters, in the global monomial order.
perm::MonomialIndex expansion_columns(unsigned n);
/// Rows: magmatic monomials in the requested order. Entry (r, c) is the
/// coefficient of column c in the expansion of monomial r.
linalg::RationalMatrix expansion_matrix(unsigned n, MagmaticOrder order = MagmaticOrder::Canonical);

/// Left kernel of the expansion matrix, as vectors over the canonical basis.
std::vector<SparseVector> identity_kernel_vectors(unsigned n);
std::vector<BracketPolynomial> identity_kernel(unsigned n);

struct ConsequenceOptions {
    NodeKind kind = NodeKind::Bracket;
    bool permutation_closure = true;
    /// Stop growing a degree once this rank is reached there (an upper bound
    /// known in advance, e.g. the kernel dimension). Indexed by degree.
    std::vector<std::optional<std::size_t>> saturation;
};

/// Multilinear degree-n consequences of the identities, as the RREF rows of
/// their span over the canonical magmatic basis. Lifts degree by degree:
/// <phi, x_new>, <x_new, phi>, x_i -> <x_i, x_new>, x_i -> <x_new, x_i>,
/// followed by closure under permutations of the variables.
std::vector<SparseVector> consequence_span(std::span<const BracketPolynomial> identities, unsigned n,
                                           const ConsequenceOptions& options = {});
std::vector<SparseVector> consequence_span(std::span<const terms::IdentityTemplate> identities, unsigned n,
                                           const ConsequenceOptions& options = {});

/// The degree-n step of consequence_span carried out modulo a prime; lower
/// degrees stay exact. The generators are the rational vectors that were
/// independent mod p, so their rational span has dimension at least rank.
struct ModularConsequences {
    std::size_t rank = 0;
    std::uint32_t prime = 0;
    std::vector<SparseVector> generators;
};
ModularConsequences consequence_rank_modular(std::span<const BracketPolynomial> identities, unsigned n,
                                             const ConsequenceOptions& options = {});

class NotAnIdentity : public std::runtime_error {
public:
    NotAnIdentity(std::string name, perm::PermElement witness);
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const perm::PermElement& witness() const noexcept { return witness_; }

private:
    std::string name_;
    perm::PermElement witness_;
};

using Partition = std::vector<unsigned>;

/// Partitions of n in reverse lexicographic order, starting with (n).
std::vector<Partition> partitions(unsigned n);
/// Irreducible character of S_n at the class of cycle type mu.
long long sn_character(const Partition& lambda, const Partition& mu);

/// Isotypic structure of a quotient W / V of subspaces of the multilinear
/// component, V inside W, under permutations of x1..xn.
struct ModuleDecomposition {
    std::vector<Partition> partitions;
    std::vector<std::size_t> multiplicities;
    std::vector<std::size_t> irreducible_dims;
    /// Fewest elements whose permutation orbits span the quotient:
    /// max over lambda of ceil(multiplicity / dim).
    std::size_t min_generators = 0;
};
ModuleDecomposition quotient_decomposition(const MagmaticBasis& basis, std::span<const SparseVector> outer,
                                           std::span<const SparseVector> inner);

struct NewIdentitiesReport {
    unsigned degree = 0;
    std::size_t magmatic_count = 0;
    std::size_t expansion_rank = 0;
    std::size_t kernel_dim = 0;
    std::size_t consequence_dim = 0;
    std::size_t new_dim = 0;
    bool consequences_in_kernel = false;
    /// Number of new identities needed on top of the known ones, i.e. the
    /// fewest generators of kernel / consequences as a module over S_n.
    std::size_t new_generators = 0;
    /// Equality of consequences and kernel was certified by a rank mod p;
    /// decomposition and representatives are then empty.
    bool modular = false;
    ModuleDecomposition decomposition;
    std::vector<BracketPolynomial> representatives;
};

/// Compares the kernel of the expansion matrix at degree n with the
/// consequences of the known identities. From degree kModularDegree on the
/// top degree is first tried modulo a prime. Throws NotAnIdentity when a known
/// identity does not expand to zero.
inline constexpr unsigned kModularDegree = 6;
NewIdentitiesReport new_identities(std::span<const terms::IdentityTemplate> known, unsigned n);

/// Whether the multilinear form of target lies in the consequence span of the
/// defining identities at its degree. All nodes must share one kind.
bool tideal_membership(const BracketPolynomial& target, std::span<const terms::IdentityTemplate> defining);

/// The reference 12 x 12 coefficient matrix of f and WA in degree 3, columns
/// in MagmaticOrder::Reference.
linalg::RationalMatrix reference_degree3_matrix();
/// f and WA at all six permutations of (a, b, c), columns in MagmaticOrder::Reference.
linalg::RationalMatrix degree3_identity_rows();

}  // namespace permmut::identities

#endif  // PERMMUT_IDENTITIES_HPP
