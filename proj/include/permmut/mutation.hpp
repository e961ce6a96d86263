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

// The (p,q)-mutation <x,y> = (xp)y - (yq)x of the free perm algebra, the
// expansion of bracket polynomials, and the set B = X u B1 u B2 u B3.

#ifndef PERMMUT_MUTATION_HPP
#define PERMMUT_MUTATION_HPP

#include "permmut/linalg.hpp"
#include "permmut/perm.hpp"
#include "permmut/terms.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace permmut::mutation {

using perm::Multidegree;
using perm::PermElement;

using Assignment = std::map<std::string, PermElement>;

class UnresolvedVariable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// (u p) v - (v q) u
PermElement mutation_product(const PermElement& u, const PermElement& v);

/// Bracket nodes map to mutation_product, product nodes to the perm product.
/// Leaves not in the assignment must be generator names (x<i>, p, q).
PermElement expand(const terms::BracketTerm& t, const Assignment& assignment = {});
PermElement expand(const terms::BracketPolynomial& poly, const Assignment& assignment = {});

/// Graded columns of a homogeneous component: every monomial with the given
/// x-multidegree, tail among its variables and parameter degree d - 1.
perm::MonomialIndex graded_columns(const Multidegree& m);

/// All nonzero multidegrees over x1..x<n_vars> with total degree in [1, max_degree],
/// ordered by total degree and then lexicographically.
std::vector<Multidegree> multidegrees_up_to(unsigned n_vars, unsigned max_degree);

enum class BFamily : std::uint8_t { X, B1, B2, B3 };
std::string to_string(BFamily f);

struct BSetElement {
    BFamily family = BFamily::X;
    // X: {i}; B1: {i, j}; B2: {j1, j2, ..., jn} with j2 <= ... <= jn;
    // B3: {j1, j2, ..., jn} with j2 > j1 <= j3 <= ... <= jn.
    std::vector<std::uint32_t> indices;
    unsigned exponent = 0;  // the i of p^(n-1-i) q^i in B3
    PermElement value;

    [[nodiscard]] std::string label() const;
    [[nodiscard]] Multidegree multidegree() const;
};

/// Elements of B over x1..x<n_vars> with x-degree <= max_degree, ordered by
/// degree, family and index tuple.
std::vector<BSetElement> enumerate_B(unsigned n_vars, unsigned max_degree, bool include_diagonal = true);

/// Expansions of every bracket monomial over the multiset, i.e. every tree
/// shape under every distinct arrangement of the variables.
std::vector<PermElement> bracket_span(const Multidegree& m);

/// Homogeneous components of P_{p,q}(X), computed once per multidegree as the
/// span of <u, v> over all splits of the multidegree.
class MutationSpace {
public:
    struct Component {
        perm::MonomialIndex columns;
        linalg::EchelonBasis basis;
        std::vector<PermElement> elements;  // basis rows as perm elements
    };

    const Component& component(const Multidegree& m);
    std::size_t dimension(const Multidegree& m) { return component(m).basis.rank(); }
    /// Membership per homogeneous part; parts violating the grading fail.
    bool contains(const PermElement& e);

private:
    std::map<Multidegree, Component> cache_;
};

bool is_mutation_element(const PermElement& e);

struct BasisReport {
    unsigned n_vars = 0;
    unsigned degree = 0;
    bool independent = false;
    bool spans = false;
    bool closed_under_bracket = false;
    bool elements_are_mutation = false;
    std::size_t multilinear_dim = 0;
    std::size_t element_count = 0;
    std::size_t b1_count = 0;
    std::size_t b1_count_off_diagonal = 0;
    std::size_t closure_pairs = 0;
    std::vector<std::string> failures;

    [[nodiscard]] bool ok() const { return independent && spans && closed_under_bracket && elements_are_mutation; }
};

/// Checks independence, spanning and bracket closure of B on every
/// multidegree up to the given degree.
BasisReport verify_basis_B(unsigned n_vars, unsigned degree);

struct RelationCheck {
    std::string relation;
    std::string instance;  // "generators", "zero" or "random #k"
    bool holds = false;
    std::string witness;   // difference of both sides when it fails
};

struct RelationsReport {
    std::vector<RelationCheck> checks;
    [[nodiscard]] bool ok() const;
};

/// The five basic relations plus <b,<a,c>> = ap<b,c> - cq<b,a>, at the
/// generators x1, x2, x3, at a = 0, and at random perm elements.
RelationsReport check_relations(unsigned samples = 20, std::uint64_t seed = 1);

/// Random element with up to max_terms terms of degree <= max_degree over
/// x1..x<n_vars>, p and q, coefficients in [-3, 3].
PermElement random_element(std::mt19937_64& rng, unsigned n_vars, unsigned max_degree, unsigned max_terms);

}  // namespace permmut::mutation

#endif  // PERMMUT_MUTATION_HPP
