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

#include "permmut/report.hpp"

#include <stdexcept>

namespace permmut::report {

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::input(const std::string& key, Record value)
{
    inputs_[key] = std::move(value);
}

void Report::result(const std::string& key, Record value)
{
    results_[key] = std::move(value);
}

void Report::line(std::string text)
{
    lines_.push_back(std::move(text));
}

std::string Report::text() const
{
    std::string out;
    for (const auto& l : lines_)
        out += l + "\n";
    return out;
}

Record Report::record() const
{
    Record r;
    r["command"] = command_;
    r["inputs"] = inputs_;
    r["results"] = results_;
    r["status"] = ok_ ? "ok" : "failure";
    r["timing"] = {{"seconds", seconds_}};
    r["text"] = lines_;
    return r;
}

Report Report::from_record(const Record& r)
{
    try {
        Report out(r.at("command").get<std::string>());
        out.inputs_ = r.at("inputs");
        out.results_ = r.at("results");
        const auto status = r.at("status").get<std::string>();
        if (status != "ok" && status != "failure")
            throw std::invalid_argument("bad status '" + status + "'");
        out.ok_ = status == "ok";
        out.seconds_ = r.at("timing").at("seconds").get<double>();
        out.lines_ = r.at("text").get<std::vector<std::string>>();
        if (!out.inputs_.is_object() || !out.results_.is_object())
            throw std::invalid_argument("inputs and results must be objects");
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed report record: ") + e.what());
    }
}

}  // namespace permmut::report
