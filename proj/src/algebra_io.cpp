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

#include "permmut/findim.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace permmut::findim {

AlgebraFormatError::AlgebraFormatError(const std::string& message, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{
}

namespace {

using json = nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Source offsets of the top-level keys and of each entry of the "table"
// array, recovered by a light scan once the document is known to be valid.
struct Layout {
    std::map<std::string, std::size_t> keys;
    std::vector<std::size_t> table_entries;
};

Layout scan(std::string_view text)
{
    Layout out;
    int depth = 0;
    bool in_table = false;
    int table_depth = 0;
    std::string last_string;
    std::size_t last_string_at = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '"') {
            const std::size_t start = i;
            std::string s;
            for (++i; i < text.size() && text[i] != '"'; ++i) {
                if (text[i] == '\\' && i + 1 < text.size())
                    ++i;
                s += text[i];
            }
            if (in_table && table_depth == 1)
                out.table_entries.push_back(start);
            last_string = std::move(s);
            last_string_at = start;
            continue;
        }
        if (ch == ':' && depth == 1) {
            out.keys.emplace(last_string, last_string_at);
            in_table = last_string == "table";
            table_depth = 0;
            continue;
        }
        if (ch == '{' || ch == '[') {
            ++depth;
            if (in_table) {
                ++table_depth;
                if (table_depth == 2)
                    out.table_entries.push_back(i);
            }
        } else if (ch == '}' || ch == ']') {
            --depth;
            if (in_table && --table_depth == 0)
                in_table = false;
        } else if (in_table && table_depth == 1 && ch != ',' && ch != ' ' && ch != '\n' && ch != '\r' &&
                   ch != '\t') {
            out.table_entries.push_back(i);  // a scalar where an entry belongs
            while (i + 1 < text.size() && text[i + 1] != ',' && text[i + 1] != ']')
                ++i;
        }
    }
    return out;
}

std::size_t as_index(const json& v, std::size_t dim, const char* what, std::size_t line)
{
    if (!v.is_number_integer())
        throw AlgebraFormatError(std::string(what) + " must be an integer", line);
    const auto i = v.get<long long>();
    if (i < 1 || static_cast<std::size_t>(i) > dim)
        throw AlgebraFormatError(std::string(what) + " " + std::to_string(i) + " outside 1.." + std::to_string(dim),
                                 line);
    return static_cast<std::size_t>(i - 1);
}

}  // namespace

FiniteAlgebra parse_algebra(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw AlgebraFormatError(std::string("malformed JSON: ") + e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    const Layout layout = scan(text);
    auto key_line = [&](const std::string& key) {
        auto it = layout.keys.find(key);
        return it == layout.keys.end() ? 1 : line_of(text, it->second);
    };

    if (!doc.is_object())
        throw AlgebraFormatError("top level must be an object", 1);
    for (const auto& [key, value] : doc.items())
        if (key != "dim" && key != "names" && key != "table" && key != "comment")
            throw AlgebraFormatError("unknown key '" + key + "'", key_line(key));
    if (!doc.contains("dim"))
        throw AlgebraFormatError("missing key 'dim'", 1);
    if (!doc.contains("table"))
        throw AlgebraFormatError("missing key 'table'", 1);

    const json& dim_v = doc["dim"];
    if (!dim_v.is_number_integer() || dim_v.get<long long>() < 1)
        throw AlgebraFormatError("'dim' must be a positive integer", key_line("dim"));
    const auto dim = static_cast<std::size_t>(dim_v.get<long long>());

    std::vector<std::string> names;
    if (doc.contains("names")) {
        const json& nv = doc["names"];
        if (!nv.is_array() || nv.size() != dim)
            throw AlgebraFormatError("'names' must list " + std::to_string(dim) + " strings", key_line("names"));
        std::set<std::string> seen;
        for (const auto& n : nv) {
            if (!n.is_string() || n.get<std::string>().empty())
                throw AlgebraFormatError("basis names must be nonempty strings", key_line("names"));
            if (!seen.insert(n.get<std::string>()).second)
                throw AlgebraFormatError("duplicate basis name '" + n.get<std::string>() + "'", key_line("names"));
            names.push_back(n.get<std::string>());
        }
    }
    FiniteAlgebra a(dim, std::move(names));

    const json& table = doc["table"];
    if (!table.is_array())
        throw AlgebraFormatError("'table' must be an array", key_line("table"));
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < table.size(); ++e) {
        const std::size_t line =
            e < layout.table_entries.size() ? line_of(text, layout.table_entries[e]) : key_line("table");
        const json& entry = table[e];
        if (!entry.is_array() || entry.size() != 4)
            throw AlgebraFormatError("table entry must be [i, j, k, \"c\"]", line);
        const std::size_t i = as_index(entry[0], dim, "index i", line);
        const std::size_t j = as_index(entry[1], dim, "index j", line);
        const std::size_t k = as_index(entry[2], dim, "index k", line);
        Rational c;
        if (entry[3].is_string()) {
            try {
                c = parse_rational(entry[3].get<std::string>());
            } catch (const std::invalid_argument&) {
                throw AlgebraFormatError("bad rational '" + entry[3].get<std::string>() + "'", line);
            }
        } else if (entry[3].is_number_integer()) {
            c = Rational(std::to_string(entry[3].get<long long>()));
        } else {
            throw AlgebraFormatError("coefficient must be a rational string", line);
        }
        if (!seen.emplace(i, j, k).second)
            throw AlgebraFormatError("duplicate entry for (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                         ", " + std::to_string(k + 1) + ")",
                                     line);
        a.set(i, j, k, c);
    }
    return a;
}

FiniteAlgebra load_algebra(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open algebra file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra(buf.str());
}

std::string serialize_algebra(const FiniteAlgebra& a)
{
    std::string out = "{\n  \"dim\": " + std::to_string(a.dim()) + ",\n  \"names\": " + json(a.names()).dump() +
                      ",\n  \"table\": [";
    bool first = true;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < a.dim(); ++k) {
                const Rational& c = a.at(i, j, k);
                if (c == 0)
                    continue;
                out += first ? "\n    " : ",\n    ";
                first = false;
                out += "[" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ", " + std::to_string(k + 1) +
                       ", " + json(permmut::to_string(c)).dump() + "]";
            }
    out += first ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

}  // namespace permmut::findim
