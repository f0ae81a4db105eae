// Tests for JSON serialization of surfaces, problems, and results, and
// end-to-end runs of the command line tool (path injected at compile time).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "io.hpp"
#include "surface.hpp"

using namespace cpat;

namespace {

constexpr double kPi = std::numbers::pi;

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = std::string("/tmp/cpat_io_") + name;
    std::ofstream out(path);
    out << text;
    return path;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CIRCLEPAT_BIN) + " " + args +
                            " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("surfaces round trip through JSON") {
    for (const char* name : {"cube", "projectivized_cube", "disc",
                             "dodecahedron", "truncated_cube"}) {
        CellularSurface s = *named_example(name);
        Json j = surface_to_json(s, name);
        CellularSurface back = surface_from_json(j);
        CHECK(back.num_faces() == s.num_faces());
        CHECK(back.num_edges() == s.num_edges());
        CHECK(back.num_vertices() == s.num_vertices());
        for (int e = 0; e < s.oriented_count(); ++e) {
            CHECK(back.next_in_left_face(e) == s.next_in_left_face(e));
            CHECK(back.left_face(e) == s.left_face(e));
        }
    }
}

TEST_CASE("problems parse with scalar broadcast and named surfaces") {
    Json j = {{"surface", "cube"},
              {"geometry", "spherical"},
              {"theta", 2.0 * kPi / 3.0},
              {"phi", 2.0 * kPi},
              {"tolerance", 1e-9},
              {"seed", 7}};
    ProblemFile f = problem_from_json(j);
    CHECK(f.surface_name == "cube");
    CHECK(f.problem.geometry == Geometry::kSpherical);
    REQUIRE(f.problem.theta.size() == 12);
    REQUIRE(f.problem.phi.size() == 6);
    for (double t : f.problem.theta) CHECK(t == doctest::Approx(2.0 * kPi / 3.0));
    CHECK(f.tolerance == 1e-9);
    CHECK(f.seed == 7);

    // explicit lists pass through unchanged
    Json j2 = {{"surface", "quad_torus"},
               {"geometry", "euclidean"},
               {"theta", Json::array({1, 1, 1, 1, 1, 1, 1, 1})},
               {"phi", Json::array({6, 6, 6, 6})}};
    ProblemFile f2 = problem_from_json(j2);
    CHECK(f2.problem.theta.size() == 8);
    CHECK(f2.problem.phi[2] == 6.0);
}

TEST_CASE("malformed problems are rejected with a named field") {
    // unknown surface
    CHECK_THROWS_AS(problem_from_json(Json{{"surface", "klein_bagel"},
                                           {"geometry", "euclidean"},
                                           {"theta", 1.0},
                                           {"phi", 6.0}}),
                    std::invalid_argument);
    // bad geometry
    CHECK_THROWS_AS(problem_from_json(Json{{"surface", "cube"},
                                           {"geometry", "parabolic"},
                                           {"theta", 1.0},
                                           {"phi", 6.0}}),
                    std::invalid_argument);
    // wrong theta length
    CHECK_THROWS_AS(problem_from_json(Json{{"surface", "cube"},
                                           {"geometry", "euclidean"},
                                           {"theta", Json::array({1.0, 1.0})},
                                           {"phi", 6.0}}),
                    std::invalid_argument);
    // missing phi
    CHECK_THROWS_AS(problem_from_json(Json{{"surface", "cube"},
                                           {"geometry", "euclidean"},
                                           {"theta", 1.0}}),
                    std::invalid_argument);
    // theta out of range
    CHECK_THROWS_AS(problem_from_json(Json{{"surface", "cube"},
                                           {"geometry", "euclidean"},
                                           {"theta", 4.0},
                                           {"phi", 6.0}}),
                    std::invalid_argument);
}

TEST_CASE("command line: solve, verify, layout, render succeed") {
    const std::string prob = write_temp("sph_cube.json", R"({
        "surface": "cube",
        "geometry": "spherical",
        "theta": 2.0943951023931953,
        "phi": 6.283185307179586
    })");
    // the flow feasibility test covers euclidean and hyperbolic problems
    // only; asking for it on a spherical problem is an input error
    CHECK(run_cli("check " + prob) == 2);
    CHECK(run_cli("solve " + prob + " --out /tmp/cpat_io_sol.json") == 0);
    CHECK(run_cli("verify " + prob) == 0);
    CHECK(run_cli("layout " + prob + " --out /tmp/cpat_io_lay.json") == 0);
    CHECK(run_cli("render " + prob + " --out /tmp/cpat_io_pic.svg") == 0);

    // solve output carries the radii and counts
    Json sol = load_json_file("/tmp/cpat_io_sol.json");
    CHECK(sol.at("converged").get<bool>());
    CHECK(sol.at("rho").size() == 6);
    // layout output carries one circle per face
    Json lay = load_json_file("/tmp/cpat_io_lay.json");
    CHECK(lay.at("circles").size() == 6);
    CHECK(lay.at("edge_angles").size() == 12);
    // the rendered file is an SVG document
    std::ifstream svg("/tmp/cpat_io_pic.svg");
    std::stringstream buf;
    buf << svg.rdbuf();
    CHECK(buf.str().find("<svg") != std::string::npos);
    CHECK(buf.str().find("circle") != std::string::npos);
}

TEST_CASE("command line: flag overrides and exit codes") {
    const std::string prob = write_temp("qt.json", R"({
        "surface": "quad_torus",
        "geometry": "hyperbolic",
        "theta": 1.0471975511965976,
        "phi": 6.283185307179586
    })");
    CHECK(run_cli("check " + prob) == 0);
    CHECK(run_cli("solve " + prob) == 0);
    // overriding theta to pi/2 makes the hyperbolic problem infeasible
    CHECK(run_cli("check " + prob + " --theta 1.5707963267948966") == 3);
    CHECK(run_cli("solve " + prob + " --theta 1.5707963267948966") == 3);
    // malformed input file
    const std::string bad = write_temp("bad.json", R"({"surface": "cube"})");
    CHECK(run_cli("check " + bad) == 2);
    CHECK(run_cli("solve /tmp/cpat_io_does_not_exist.json") == 2);
}
