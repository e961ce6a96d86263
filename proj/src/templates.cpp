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

#include "permmut/terms.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace permmut::terms {

namespace {

struct SignedPermutation {
    std::array<std::string, 3> order;
    int sign;
};

// S3 acting on (a, b, c) in lexicographic order with signs.
std::vector<SignedPermutation> s3(const std::string& a, const std::string& b, const std::string& c)
{
    return {{{a, b, c}, +1}, {{a, c, b}, -1}, {{b, a, c}, -1},
            {{b, c, a}, +1}, {{c, a, b}, +1}, {{c, b, a}, -1}};
}

// Builds "sum over S3 of sign * shape(s1, s2, s3)" as source text.
std::string s3_sum(bool alternating,
                   const std::function<std::string(const std::string&, const std::string&, const std::string&)>& shape)
{
    std::string out;
    for (const auto& [o, sign] : s3("a", "b", "c")) {
        const bool minus = alternating && sign < 0;
        if (out.empty())
            out += minus ? "-" : "";
        else
            out += minus ? " - " : " + ";
        out += "(" + shape(o[0], o[1], o[2]) + ")";
    }
    return out;
}

TemplateRegistry make_builtin()
{
    TemplateRegistry r;
    const std::vector<std::string> abc{"a", "b", "c"};
    const std::vector<std::string> abcd{"a", "b", "c", "d"};

    r.define("f", abc, s3_sum(true, [](auto& x, auto& y, auto& z) { return "<<" + x + "," + y + ">," + z + ">"; }));
    r.define("ftilde", abc,
             s3_sum(true, [](auto& x, auto& y, auto& z) { return "<" + x + ",<" + y + "," + z + ">>"; }));
    r.define("wa", abc, "assoc(a,b,c) + assoc(b,c,a) - assoc(b,a,c)");
    r.define("flex", abc, "assoc(a,b,c) + assoc(c,b,a)");
    // Slots follow the argument order (x1, x3, x2, x4) of the written identities.
    r.define("hbar", abcd, s3_sum(false, [](auto& x, auto& y, auto& z) {
                 return "<<" + x + "," + y + ">,<" + z + ",d>> - <" + x + ",<<" + y + "," + z + ">,d>>";
             }));
    r.define("ibar", abcd, "assoc(c, bullet(a,d), b) - bullet(assoc(c,d,b), a) - bullet(assoc(c,a,b), d)");
    r.define("conj4a", abcd, "<<<a,b>,c>,d> + <<<c,d>,a>,b> - <<<a,d>,c>,b> - <<<c,b>,a>,d>");
    r.define("conj4b", abcd,
             "<<a,b>,<d,c>> + <<c,<b,a>>,d> + <<<b,a>,c>,d>"
             " - <<<a,b>,d>,c> - <<<b,c>,a>,d> - <<<c,a>,b>,d>");
    r.define("crit36", {"a", "b", "c", "y"}, s3_sum(true, [](auto& x1, auto& x2, auto& x3) {
                 return "(" + x1 + "*y)*((" + x2 + "*y)*" + x3 + ") - (((" + x1 + "*y)*" + x2 + ")*y)*" + x3;
             }));
    r.define("bicomm_right", abc, "(a*b)*c - (a*c)*b");
    r.define("bicomm_left", abc, "a*(b*c) - b*(a*c)");
    return r;
}

}  // namespace

const TemplateRegistry& TemplateRegistry::builtin()
{
    static const TemplateRegistry registry = make_builtin();
    return registry;
}

const IdentityTemplate* TemplateRegistry::find(std::string_view name) const
{
    auto it = templates_.find(name);
    return it == templates_.end() ? nullptr : &it->second;
}

const IdentityTemplate& TemplateRegistry::at(std::string_view name) const
{
    if (const auto* t = find(name))
        return *t;
    throw std::invalid_argument("unknown template '" + std::string(name) + "'");
}

std::vector<std::string> TemplateRegistry::names() const
{
    std::vector<std::string> out;
    for (const auto& [n, t] : templates_)
        out.push_back(n);
    return out;
}

void TemplateRegistry::define(std::string name, std::vector<std::string> slots, std::string_view body)
{
    // Bodies may refer to templates defined earlier in this registry.
    BracketPolynomial parsed = parse(body, *this);
    const auto vars = parsed.variables();
    for (const auto& v : vars)
        if (std::find(slots.begin(), slots.end(), v) == slots.end())
            throw std::invalid_argument("template '" + name + "' uses undeclared slot '" + v + "'");
    for (const auto& s : slots)
        if (!vars.contains(s))
            throw std::invalid_argument("template '" + name + "' never uses slot '" + s + "'");
    define(IdentityTemplate{std::move(name), std::move(slots), std::move(parsed)});
}

void TemplateRegistry::define(IdentityTemplate t)
{
    std::string key = t.name;
    templates_.insert_or_assign(std::move(key), std::move(t));
}

void TemplateRegistry::load(std::string_view text)
{
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string line(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
        };
        const auto open = line.find('(');
        const auto close = line.find(')');
        const auto eq = line.find('=', close == std::string::npos ? 0 : close);
        if (open == std::string::npos || close == std::string::npos || close < open || eq == std::string::npos)
            fail("expected 'name(slot, ...) = body'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string name = trim(line.substr(0, open));
        if (name.empty())
            fail("missing template name");
        std::vector<std::string> slots;
        std::string rest = line.substr(open + 1, close - open - 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            const auto comma = rest.find(',', pos);
            const std::string slot = trim(rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (slot.empty())
                fail("empty slot name");
            slots.push_back(slot);
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        try {
            define(name, std::move(slots), line.substr(eq + 1));
        } catch (const ParseError& e) {
            fail(e.what());
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }
}

}  // namespace permmut::terms
