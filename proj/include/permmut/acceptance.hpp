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

// The twelve acceptance criteria, each with a runtime budget. A criterion
// that finishes over budget fails.

#ifndef PERMMUT_ACCEPTANCE_HPP
#define PERMMUT_ACCEPTANCE_HPP

#include "permmut/terms.hpp"

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace permmut::acceptance {

enum class Status : std::uint8_t { Pass, Fail, Skipped };
std::string to_string(Status s);

struct Options {
    /// Criteria needing a larger degree are skipped.
    unsigned degree_limit = 6;
    /// Also compare consequences and kernel at degree 6 in criterion 9.
    bool degree6 = false;
    /// Random (p, q) pairs per algebra in criterion 11.
    unsigned samples = 100;
    unsigned algebras = 20;
    std::uint64_t seed = 1;
    /// Templates the identity criteria look up by name.
    terms::TemplateRegistry registry = terms::TemplateRegistry::builtin();
    /// Run only these criteria (all when empty).
    std::set<int> only;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    Status status = Status::Skipped;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

/// "PASS  4  basis B of the free mutation algebra (0.93 s of 300 s): ..."
std::string render(const CriterionResult& r);

/// Runs the criteria in order, reporting each result as soon as it is known.
std::vector<CriterionResult> run_all(const Options& options,
                                     const std::function<void(const CriterionResult&)>& on_result = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace permmut::acceptance

#endif  // PERMMUT_ACCEPTANCE_HPP
