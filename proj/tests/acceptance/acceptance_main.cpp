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

// One line per acceptance criterion; exit status 0 iff none failed.
// Optional arguments select criteria by number; --degree6 extends criterion 9.

#include "permmut/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv)
{
    permmut::acceptance::Options options;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--degree6")
            options.degree6 = true;
        else
            options.only.insert(std::atoi(arg.c_str()));
    }
    const auto results = permmut::acceptance::run_all(options, [](const auto& r) {
        std::cout << permmut::acceptance::render(r) << std::endl;
    });
    const bool ok = permmut::acceptance::all_passed(results);
    std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << std::endl;
    return ok ? 0 : 1;
}
