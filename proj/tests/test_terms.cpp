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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "permmut/terms.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace permmut;
using namespace permmut::terms;

namespace {

BracketPolynomial P(std::string_view text) { return parse(text); }

BracketTerm random_term(std::mt19937_64& rng, std::size_t leaves, bool allow_products)
{
    static const std::vector<std::string> names{"a", "b", "c", "x1"};
    if (leaves == 1)
        return BracketTerm::leaf(names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)]);
    const std::size_t left = std::uniform_int_distribution<std::size_t>(1, leaves - 1)(rng);
    const bool product = allow_products && std::bernoulli_distribution(0.4)(rng);
    return BracketTerm::node(product ? NodeKind::Product : NodeKind::Bracket, random_term(rng, left, allow_products),
                             random_term(rng, leaves - left, allow_products));
}

BracketPolynomial random_poly(std::mt19937_64& rng, bool allow_products)
{
    BracketPolynomial p;
    std::uniform_int_distribution<int> count(1, 4), coeff(-3, 3), den(1, 3);
    std::uniform_int_distribution<std::size_t> leaves(1, 5);
    for (int i = count(rng); i > 0; --i)
        {
        Rational c(coeff(rng), den(rng));
        c.canonicalize();
        p.add_term(random_term(rng, leaves(rng), allow_products), c);
    }
    return p;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("trees")
{
    const auto t = BracketTerm::bracket(BracketTerm::leaf("a"),
                                        BracketTerm::product(BracketTerm::leaf("b"), BracketTerm::leaf("a")));
    CHECK_FALSE(t.is_leaf());
    CHECK(t.kind() == NodeKind::Bracket);
    CHECK(t.left().name() == "a");
    CHECK(t.right().kind() == NodeKind::Product);
    CHECK(t.degree() == 3);
    CHECK(t.leaves() == std::vector<std::string>{"a", "b", "a"});
    CHECK(t.node_kinds() == std::set<NodeKind>{NodeKind::Bracket, NodeKind::Product});
    CHECK(parse(t.render()) == BracketPolynomial(t));
}

TEST_CASE("render and parse round trip on random polynomials")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const auto p = random_poly(rng, i % 2 == 0);
        CAPTURE(p.render());
        CHECK(parse(p.render()) == p);
    }
    CHECK(BracketPolynomial().render() == "0");
    CHECK(P("0").is_zero());
}

TEST_CASE("derived operations expand at parse time")
{
    CHECK(P("circ(a,b)") == P("<a,b> - <b,a>"));
    CHECK(P("bullet(a,b)") == P("<a,b> + <b,a>"));
    CHECK(P("assoc(a,b,c)") == P("<<a,b>,c> - <a,<b,c>>"));
    CHECK(P("[a,b]") == P("a*b - b*a"));
    CHECK(P("2*<a,b> - <a,b>") == P("<a,b>"));
    CHECK(P("1/2*<a,b> + 1/2*<a,b>") == P("<a,b>"));
    CHECK(P("-(<a,b>)") == -P("<a,b>"));
    CHECK(P("<a + b, c>") == P("<a,c> + <b,c>"));
    CHECK(P("<a,b> - <a,b>").is_zero());
}

TEST_CASE("parse errors carry a position")
{
    for (std::string_view bad : {"<a,b", "<a b>", "a +", "nosuch(a)", "circ(a)", "<,>", "a ? b", ""}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse(bad), ParseError);
    }
    try {
        parse("<a,b> + <c d>");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() >= 10);
        CHECK(e.position() <= 12);
    }
}

TEST_CASE("polynomial queries")
{
    const auto p = P("<<a,b>,c> - 3*<a,<c,b>>");
    CHECK(p.size() == 2);
    CHECK(p.variables() == std::set<std::string>{"a", "b", "c"});
    CHECK(p.homogeneous_degree() == std::optional<std::size_t>(3));
    CHECK(p.is_multilinear());
    CHECK(p.coefficient(BracketTerm::bracket(BracketTerm::leaf("a"),
                                             BracketTerm::bracket(BracketTerm::leaf("c"), BracketTerm::leaf("b")))) == -3);
    CHECK(p.node_kinds() == std::set<NodeKind>{NodeKind::Bracket});
    CHECK_FALSE(P("<a,a>").is_multilinear());
    CHECK_FALSE(P("<a,b> + c").homogeneous_degree().has_value());
    CHECK_FALSE(P("<a,b> + <a,c>").is_multilinear());
    CHECK(P("a*b + <a,b>").node_kinds().size() == 2);
}

TEST_CASE("substitution is linear and simultaneous")
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_poly(rng, true);
        const auto u = random_poly(rng, true), v = random_poly(rng, true);
        // Occurring once per term, a enters linearly.
        const auto once = substitute(p, {{"a", P("b")}});
        const auto lin = bracket(P("a"), once) + product(once, P("a"));
        CHECK(substitute(lin, {{"a", u + v}}) == substitute(lin, {{"a", u}}) + substitute(lin, {{"a", v}}));
        CHECK(substitute(p, {}) == p);
        CHECK(substitute(p, {{"a", P("a")}, {"b", P("b")}}) == p);
    }
    CHECK(substitute(P("<a,b>"), {{"a", P("b")}, {"b", P("a")}}) == P("<b,a>"));
    CHECK(substitute(P("<a,b>"), {{"a", P("x + y")}}) == P("<x,b> + <y,b>"));
    CHECK(substitute(P("a*a"), {{"a", P("x + y")}}) == P("x*x + x*y + y*x + y*y"));
    CHECK(rename(P("<a,<b,a>>"), {{"a", "c"}}) == P("<c,<b,c>>"));
}

TEST_CASE("polarization")
{
    const auto m = multilinearize(P("<<y,y>,y>"));
    CHECK(m.size() == 6);
    CHECK(m.is_multilinear());
    CHECK(m.variables().size() == 3);
    for (const auto& [t, c] : m.terms())
        CHECK(c == 1);
    CHECK(multilinearize(P("<a,b>")) == P("<a,b>"));

    // <x,x> polarizes to the symmetrization of <a,b> under any renaming.
    const auto two = multilinearize(P("<x,x>"));
    REQUIRE(two.variables().size() == 2);
    const auto vars = two.variables();
    const std::string u = *vars.begin(), w = *std::next(vars.begin());
    CHECK(rename(two, {{u, "a"}, {w, "b"}}) == P("bullet(a,b)"));
}

TEST_CASE("templates")
{
    const auto& reg = TemplateRegistry::builtin();
    for (const char* name : {"f", "ftilde", "wa", "flex", "hbar", "ibar", "conj4a", "conj4b", "crit36",
                             "bicomm_right", "bicomm_left"})
        CHECK(reg.find(name) != nullptr);
    CHECK(reg.find("nosuch") == nullptr);
    CHECK_THROWS_AS((void)reg.at("nosuch"), std::invalid_argument);

    const auto& f = reg.at("f");
    CHECK(f.arity() == 3);
    CHECK(f.body.size() == 6);
    const std::vector<std::string> args{"x", "x", "z"};
    CHECK(instantiate(f, args) == substitute(f.body, {{"a", P("x")}, {"b", P("x")}, {"c", P("z")}}));
    CHECK(instantiate_standard(f).variables() == std::set<std::string>{"x1", "x2", "x3"});
    const std::vector<std::string> short_args{"x"};
    CHECK_THROWS_AS(instantiate(f, short_args), ArityError);

    // Calls inside the parser are instantiations.
    CHECK(P("wa(x,y,z)") == instantiate(reg.at("wa"), std::vector<std::string>{"x", "y", "z"}));
    CHECK_THROWS_AS(P("wa(x,y)"), ParseError);
    CHECK(P("wa(a,b,c)") == P("assoc(a,b,c) + assoc(b,c,a) - assoc(b,a,c)"));
    CHECK(P("flex(a,b,c)") == P("assoc(a,b,c) + assoc(c,b,a)"));
    CHECK(P("bicomm_right(a,b,c)") == P("(a*b)*c - (a*c)*b"));

    // f is alternating in its three slots.
    const auto fa = P("f(a,b,c)");
    CHECK(P("f(b,a,c)") == -fa);
    CHECK(P("f(a,c,b)") == -fa);
    CHECK(P("f(a,a,c)").is_zero());
}

TEST_CASE("definitions are validated")
{
    TemplateRegistry r = TemplateRegistry::builtin();
    r.define("comm", {"a", "b"}, "<a,b> - <b,a>");
    CHECK(P("circ(u,v)") == parse("comm(u,v)", r));
    r.define("comm", {"a", "b"}, "<a,b>");
    CHECK(parse("comm(u,v)", r) == P("<u,v>"));
    CHECK_THROWS_AS(r.define("bad", {"a", "b"}, "<a,c>"), std::invalid_argument);
    CHECK_THROWS_AS(r.define("bad", {"a", "b"}, "<a,a>"), std::invalid_argument);
    CHECK_THROWS_AS(r.define("bad", {"a"}, "<a,"), ParseError);
    CHECK(r.find("bad") == nullptr);
}

TEST_CASE("template files")
{
    TemplateRegistry r = TemplateRegistry::builtin();
    r.load(read_file(PERMMUT_DATA_DIR "/six_identities.tmpl"));
    for (const char* name : {"f", "wa", "hbar", "ibar", "conj4a", "conj4b"}) {
        CAPTURE(name);
        CHECK(r.at(name).slots == TemplateRegistry::builtin().at(name).slots);
        CHECK(r.at(name).body == TemplateRegistry::builtin().at(name).body);
    }

    TemplateRegistry s = TemplateRegistry::builtin();
    s.load("# comment\n\ng(a,b) = <a,b> + <b,a>\n");
    CHECK(parse("g(x,y)", s) == P("bullet(x,y)"));
    try {
        s.load("g(a,b) = <a,b>\n\nh(a) = <a,\n");
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(s.load("no equals sign"), std::invalid_argument);
}
