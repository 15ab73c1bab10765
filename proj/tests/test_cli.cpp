#include "defcohom/job.hpp"

#include <doctest.h>

using namespace defcohom;
using nlohmann::json;

namespace {

json run_text(const std::string& text) {
    JobSpec spec = parse_job(text);
    return run_job(spec, text);
}

} // namespace

TEST_CASE("parse_job accepts the documented shapes") {
    CHECK_NOTHROW(parse_job(
        R"({"construct":{"kind":"lie_algebra","name":"so3"},
            "tasks":[{"op":"cohomology","degrees":[-1,2]}]})"));
    CHECK_NOTHROW(parse_job(
        R"({"construct":{"kind":"la_vector_space","partial":[["1","0"],["0","0"]],"trunc":1},
            "tasks":[{"op":"cohomology","complex":"linear","degrees":[-1,2]}]})"));
    CHECK_NOTHROW(parse_job(
        R"({"model":{"dimA":2,"dimE":0,"dimC":0,"trunc":0},
            "bracket":{"val":[{"inputs":["A1","A2"],"output":{"A1":"1/2"}}]},
            "tasks":[{"op":"mc-check"}]})"));
}

TEST_CASE("parse_job reports located errors") {
    // unknown basis index
    CHECK_THROWS_WITH_AS(
        static_cast<void>(parse_job(
            R"({"model":{"dimA":1,"dimE":0,"dimC":0,"trunc":0},
                "bracket":{"val":[{"inputs":["A1","A2"],"output":{"A1":"1"}}]},
                "tasks":[{"op":"mc-check"}]})")),
        doctest::Contains("unknown basis index"), Error);
    // malformed rationals
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_job(
                             R"({"construct":{"kind":"la_vector_space","partial":[["1/0"]],
                                 "trunc":1},"tasks":[{"op":"mc-check"}]})")),
                         doctest::Contains("malformed rational"), Error);
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_job(
                             R"({"construct":{"kind":"la_vector_space","partial":[["1.5"]],
                                 "trunc":1},"tasks":[{"op":"mc-check"}]})")),
                         doctest::Contains("malformed rational"), Error);
    // unknown construction
    CHECK_THROWS_WITH_AS(
        static_cast<void>(parse_job(
            R"({"construct":{"kind":"nope"},"tasks":[{"op":"mc-check"}]})")),
        doctest::Contains("unknown construction"), Error);
    // unknown op and missing degrees
    CHECK_THROWS_AS(static_cast<void>(parse_job(
                        R"({"construct":{"kind":"lie_algebra","name":"so3"},
                            "tasks":[{"op":"destroy"}]})")),
                    Error);
    CHECK_THROWS_AS(static_cast<void>(parse_job(
                        R"({"construct":{"kind":"lie_algebra","name":"so3"},
                            "tasks":[{"op":"cohomology"}]})")),
                    Error);
    // both or neither model/construct
    CHECK_THROWS_AS(static_cast<void>(parse_job(R"({"tasks":[{"op":"mc-check"}]})")), Error);
}

TEST_CASE("so3 job: betti table with betti[0] = 0") {
    json report = run_text(
        R"({"construct":{"kind":"lie_algebra","name":"so3"},
            "tasks":[{"op":"cohomology","degrees":[-1,2]}]})");
    const json& task = report.at("tasks")[0];
    CHECK(task.at("status") == "PASS");
    CHECK(task.at("data").at("betti")[1] == 0); // degree 0
    CHECK(report_exit_code(report) == 0);
}

TEST_CASE("formula-check PASSes for diag(1,0)") {
    json report = run_text(
        R"({"construct":{"kind":"la_vector_space","partial":[["1","0"],["0","0"]],"trunc":1},
            "tasks":[{"op":"formula-check"}]})");
    const json& task = report.at("tasks")[0];
    CHECK(task.at("status") == "PASS");
    CHECK(task.at("data").at("formula") == json::array({1, 2, 1}));
    CHECK(task.at("data").at("assembled") == json::array({1, 2, 1}));
}

TEST_CASE("gauge task on h3") {
    json report = run_text(
        R"({"construct":{"kind":"lie_algebra","name":"heisenberg3"},
            "tasks":[{"op":"gauge",
                      "generator":{"val":[{"inputs":["A1"],"output":{"A2":"1"}}]},
                      "times":["1","2"]}]})");
    const json& task = report.at("tasks")[0];
    CHECK(task.at("status") == "PASS");
    CHECK(task.at("data").at("ode_verified") == true);
    for (const auto& t : task.at("data").at("times")) CHECK(t.at("maurer_cartan") == true);
}

TEST_CASE("failing mc-check yields FAIL with witness and exit code 1") {
    json report = run_text(
        R"({"model":{"dimA":3,"dimE":0,"dimC":0,"trunc":0},
            "bracket":{"val":[{"inputs":["A1","A2"],"output":{"A1":"1"}},
                               {"inputs":["A1","A3"],"output":{"A2":"1"}}]},
            "tasks":[{"op":"mc-check"},{"op":"weights"}]})");
    CHECK(report.at("tasks")[0].at("status") == "FAIL");
    CHECK(report.at("tasks")[0].contains("witness"));
    // later independent tasks still run
    CHECK(report.at("tasks")[1].at("status") == "PASS");
    CHECK(report_exit_code(report) == 1);
}

TEST_CASE("task preconditions fail per-task without aborting the job") {
    json report = run_text(
        R"({"model":{"dimA":3,"dimE":0,"dimC":0,"trunc":0},
            "bracket":{"val":[{"inputs":["A1","A2"],"output":{"A1":"1"}},
                               {"inputs":["A1","A3"],"output":{"A2":"1"}}]},
            "tasks":[{"op":"cohomology","degrees":[-1,1]},{"op":"mc-check"}]})");
    CHECK(report.at("tasks")[0].at("status") == "ERROR"); // not Maurer-Cartan
    CHECK(report.at("tasks")[1].at("status") == "FAIL");
}

TEST_CASE("raw mixed model with symbol tables runs the full pipeline") {
    // [A1,C1] = C1 with anchor rho(A1) = -u1 d/du1, rho(C1) = d/du1 is a
    // genuine Lie algebroid structure on the mixed model.
    json report = run_text(
        R"({"model":{"dimA":1,"dimE":1,"dimC":1,"trunc":2},
            "bracket":{"val":[{"inputs":["A1","C1"],"output":{"C1":"1"}}],
                       "sym":[{"inputs":["A1"],"direction":1,"coeff":{"u1":"-1"}},
                              {"inputs":["C1"],"direction":1,"coeff":{"1":"1"}}]},
            "tasks":[{"op":"mc-check"},
                     {"op":"cohomology","complex":"linear","degrees":[-1,2]},
                     {"op":"linearize","samples":4,"seed":3},
                     {"op":"les-check","degrees":[-1,2]}]})");
    for (const auto& task : report.at("tasks")) CHECK(task.at("status") == "PASS");
    // dropping the compensating A1 symbol breaks the anchor condition
    json broken = run_text(
        R"({"model":{"dimA":1,"dimE":1,"dimC":1,"trunc":2},
            "bracket":{"val":[{"inputs":["A1","C1"],"output":{"C1":"1"}}],
                       "sym":[{"inputs":["C1"],"direction":1,"coeff":{"1":"1"}}]},
            "tasks":[{"op":"mc-check"}]})");
    CHECK(broken.at("tasks")[0].at("status") == "FAIL");
    CHECK(broken.at("tasks")[0].at("witness").at("kind") == "sym");
}

TEST_CASE("reports are deterministic byte-for-byte") {
    std::string text =
        R"({"construct":{"kind":"vb_algebra","g":"sl2","rep":"standard"},
            "tasks":[{"op":"cohomology","complex":"linear","degrees":[-1,3]},
                     {"op":"splitting-check","degrees":[-1,3]},
                     {"op":"les-check","degrees":[-1,3]},
                     {"op":"linearize","samples":3,"seed":7}]})";
    json r1 = run_text(text);
    json r2 = run_text(text);
    CHECK(r1.dump(2) == r2.dump(2));
    CHECK(report_exit_code(r1) == 0);
}

TEST_CASE("examples catalog is populated and runnable") {
    json catalog = examples_catalog();
    CHECK(catalog.size() >= 10);
    for (const auto& entry : catalog) {
        std::string text = entry.at("job").dump();
        JobSpec spec = parse_job(text);
        json report = run_job(spec, text);
        INFO(entry.at("name").get<std::string>());
        CHECK(report_exit_code(report) == 0);
    }
}

TEST_CASE("library API values match the CLI report") {
    std::string text =
        R"({"construct":{"kind":"lie_algebra","name":"heisenberg3"},
            "tasks":[{"op":"cohomology","degrees":[-1,2]}]})";
    json report = run_text(text);
    BuiltBracket h3 = from_lie_algebra(heisenberg3());
    auto h = cohomology(def_complex(h3.bracket, -1, 3));
    const json& betti = report.at("tasks")[0].at("data").at("betti");
    for (int k = -1; k <= 2; ++k)
        CHECK(betti[static_cast<std::size_t>(k + 1)].get<std::size_t>() == h.betti_at(k));
}

TEST_CASE("input digest is stable") {
    CHECK(input_digest("abc") == input_digest("abc"));
    CHECK(input_digest("abc") != input_digest("abd"));
}
