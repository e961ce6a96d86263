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

// Homogeneous components of ideals generated by mutation elements, both
// inside the mutation algebra and inside the ambient perm algebra, and the
// Cohn-type certificate that a quotient is exceptional.

#ifndef PERMMUT_SPECIALITY_HPP
#define PERMMUT_SPECIALITY_HPP

#include "permmut/linalg.hpp"
#include "permmut/perm.hpp"
#include "permmut/terms.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace permmut::speciality {

using perm::Multidegree;
using perm::PermElement;
using terms::BracketPolynomial;

class UnreachableMultidegree : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct IdealComponentRequest {
    std::vector<BracketPolynomial> generators;  // bracket polynomials in x<i>
    Multidegree target;
};

/// x-multidegree shared by all terms of a bracket polynomial in x<i>.
/// Throws std::invalid_argument when terms disagree or a leaf is not x<i>.
Multidegree multidegree_of(const BracketPolynomial& poly);

/// Bracket words w(g) in which a generator g occurs once and the remaining
/// variables fill the target: g itself at equal multidegree, otherwise
/// <w, u> and <u, w> for every bracket monomial u over a nonempty part of
/// the missing variables. Zero generators and generators that do not fit
/// contribute nothing; UnreachableMultidegree is thrown when no nonzero
/// generator fits.
std::vector<BracketPolynomial> mutation_ideal_words(const IdealComponentRequest& req);
/// Expansions of mutation_ideal_words.
std::vector<PermElement> mutation_ideal_component(const IdealComponentRequest& req);

/// RREF rows (as elements) spanning the target component of the two-sided
/// ideal of the perm algebra generated by the given elements: g, u g, g v
/// and u g v over monomials u, v completing the multidegree, with parameter
/// degree one less than x-degree overall. Generators that do not fit are
/// skipped.
std::vector<PermElement> perm_ideal_component(std::span<const PermElement> generators, const Multidegree& m);

struct Equation {
    std::vector<Rational> coefficients;  // one per unknown
    Rational rhs;

    /// Scaled so that the first nonzero entry of (coefficients | rhs) is positive.
    [[nodiscard]] Equation normalized() const;
    /// "λ2 + λ3 = 1"
    [[nodiscard]] std::string render() const;
    friend bool operator==(const Equation&, const Equation&) = default;
};

struct CohnReport {
    std::vector<BracketPolynomial> ansatz;  // the unknowns multiply these words
    PermElement target_expansion;
    bool in_perm_ideal = false;
    bool in_mutation_ideal = false;
    std::vector<perm::PermMonomial> equation_monomials;  // one per row, in global order
    std::vector<Equation> equations;
    linalg::RationalMatrix system;
    linalg::SparseVector rhs;
    /// When the system is inconsistent: y with y^T A = 0 and y . rhs != 0.
    std::optional<linalg::SparseVector> certificate;
    std::string verdict;

    [[nodiscard]] bool certified() const noexcept { return in_perm_ideal && !in_mutation_ideal; }
};

inline constexpr const char* kCertifiedVerdict = "exceptional image certified";

CohnReport cohn_check(const IdealComponentRequest& req, const BracketPolynomial& target);

/// Generators <<x2,x3>,x4> and <<x2,x3>,x1>, target multidegree x1 x2 x3 x4.
IdealComponentRequest cohn_instance();
/// <<x2,x3>,<x1,x4>>
BracketPolynomial cohn_target();
/// The reference 12 equations for cohn_instance() and cohn_target().
std::vector<Equation> reference_cohn_equations();
/// Equality as multisets after normalization.
bool same_equations(std::span<const Equation> a, std::span<const Equation> b);
struct CohnInstance {
    IdealComponentRequest request;
    BracketPolynomial target;
};

/// Lines "generator: <expr>" (any number) and "target: <expr>"; '#' starts a
/// comment line. The target multidegree is read off the target. Errors
/// name the line.
CohnInstance parse_cohn_instance(std::string_view text,
                                 const terms::TemplateRegistry& registry = terms::TemplateRegistry::builtin());

/// expand(<<x2,x3>,<x1,x4>>) == x1 p f1 - x4 q f2 as perm elements.
bool cohn_relation_holds();

}  // namespace permmut::speciality

#endif  // PERMMUT_SPECIALITY_HPP
