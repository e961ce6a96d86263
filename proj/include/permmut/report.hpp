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

// Result of one command, rendered either as text or as a JSON record:
//
//   { "command": ..., "inputs": {...}, "results": {...},
//     "status": "ok" | "failure", "timing": { "seconds": ... },
//     "text": [lines of the text rendering] }

#ifndef PERMMUT_REPORT_HPP
#define PERMMUT_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace permmut::report {

using Record = nlohmann::ordered_json;

class Report {
public:
    explicit Report(std::string command);

    void input(const std::string& key, Record value);
    void result(const std::string& key, Record value);
    /// A line of the text rendering.
    void line(std::string text);
    void fail() noexcept { ok_ = false; }
    void set_seconds(double seconds) noexcept { seconds_ = seconds; }

    [[nodiscard]] bool ok() const noexcept { return ok_; }
    [[nodiscard]] const Record& inputs() const noexcept { return inputs_; }
    [[nodiscard]] const Record& results() const noexcept { return results_; }

    [[nodiscard]] std::string text() const;
    [[nodiscard]] Record record() const;

    /// Inverse of record(); throws std::invalid_argument on schema mismatch.
    static Report from_record(const Record& r);

private:
    std::string command_;
    Record inputs_ = Record::object();
    Record results_ = Record::object();
    std::vector<std::string> lines_;
    bool ok_ = true;
    double seconds_ = 0;
};

}  // namespace permmut::report

#endif  // PERMMUT_REPORT_HPP
