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

#include "permmut/acceptance.hpp"
#include "permmut/report.hpp"

using namespace permmut;
using report::Record;
using report::Report;

TEST_CASE("records carry every field")
{
    Report r("identities");
    r.input("degree", 4);
    r.input("known", Record::array({"f", "wa"}));
    r.result("kernel_dim", 107);
    r.line("kernel: 107");
    r.line("new identities: 2");
    r.set_seconds(0.25);

    const auto rec = r.record();
    CHECK(rec["command"] == "identities");
    CHECK(rec["inputs"]["degree"] == 4);
    CHECK(rec["results"]["kernel_dim"] == 107);
    CHECK(rec["status"] == "ok");
    CHECK(rec["timing"]["seconds"] == 0.25);
    CHECK(rec["text"].size() == 2);
    CHECK(r.text() == "kernel: 107\nnew identities: 2\n");

    std::vector<std::string> keys;
    for (const auto& [k, v] : rec.items())
        keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"command", "inputs", "results", "status", "timing", "text"});
}

TEST_CASE("records round trip through JSON text")
{
    Report r("findim");
    r.input("file", "prop35.alg");
    r.result("holds", false);
    r.result("witness", Record{{"tuple", {1, 1, 3}}, {"value", "-e1"}});
    r.line("no: (e1,e1,e3) -> -e1");
    r.fail();
    r.set_seconds(1.5);

    const auto text = r.record().dump(2);
    const auto back = Report::from_record(Record::parse(text));
    CHECK_FALSE(back.ok());
    CHECK(back.record() == r.record());
    CHECK(back.text() == r.text());
    CHECK(back.record()["status"] == "failure");
}

TEST_CASE("malformed records are rejected")
{
    auto rec = Report("x").record();
    CHECK_NOTHROW(Report::from_record(rec));
    auto bad_status = rec;
    bad_status["status"] = "maybe";
    CHECK_THROWS_AS(Report::from_record(bad_status), std::invalid_argument);
    auto missing = rec;
    missing.erase("timing");
    CHECK_THROWS_AS(Report::from_record(missing), std::invalid_argument);
    auto wrong_type = rec;
    wrong_type["inputs"] = 3;
    CHECK_THROWS_AS(Report::from_record(wrong_type), std::invalid_argument);
}

TEST_CASE("criterion lines")
{
    acceptance::CriterionResult r;
    r.id = 4;
    r.title = "basis";
    r.status = acceptance::Status::Pass;
    r.detail = "ok";
    r.seconds = 0.5;
    r.budget_seconds = 300;
    CHECK(acceptance::render(r) == "PASS   4  basis (0.500 s of 300.0 s): ok");
    r.status = acceptance::Status::Skipped;
    CHECK(acceptance::render(r).rfind("SKIP", 0) == 0);
    CHECK(acceptance::to_string(acceptance::Status::Fail) == "FAIL");
}

TEST_CASE("the harness runs, skips and fails criteria")
{
    acceptance::Options o;
    o.only = {1, 2, 12};
    std::vector<int> streamed;
    const auto results = acceptance::run_all(o, [&](const acceptance::CriterionResult& r) { streamed.push_back(r.id); });
    CHECK(streamed == std::vector<int>{1, 2, 12});
    CHECK(acceptance::all_passed(results));

    acceptance::Options low;
    low.only = {1, 3};
    low.degree_limit = 2;
    const auto skipped = acceptance::run_all(low);
    REQUIRE(skipped.size() == 2);
    CHECK(skipped[0].status == acceptance::Status::Pass);
    CHECK(skipped[1].status == acceptance::Status::Skipped);
    CHECK(acceptance::all_passed(skipped));

    // A template that is not an identity must make the criteria using it fail.
    acceptance::Options broken;
    broken.only = {5, 6};
    broken.registry.define("wa", {"a", "b", "c"}, "<<a,b>,c>");
    const auto failed = acceptance::run_all(broken);
    REQUIRE(failed.size() == 2);
    for (const auto& r : failed) {
        CHECK(r.status == acceptance::Status::Fail);
        CHECK_FALSE(r.detail.empty());
    }
    CHECK_FALSE(acceptance::all_passed(failed));
}
