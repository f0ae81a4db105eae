#pragma once

#include <string>

#include "coherent.hpp"
#include "energy.hpp"
#include "layout.hpp"
#include "solver.hpp"

// All JSON plumbing lives here so the library modules stay serialization-free.
// json.hpp in vendor/ is the single-header nlohmann library.

#include "json.hpp"

namespace cpat {

using Json = nlohmann::json;

// { "faces": [[int,...],...], "name"?: string }; -1 marks a gap (SENTINEL)
Json surface_to_json(const CellularSurface& s, const std::string& name = "");
CellularSurface surface_from_json(const Json& j);

struct ProblemFile {
    PatternProblem problem;
    double tolerance = 1e-10;
    unsigned seed = 0;
    std::string surface_name;
};

// Accepts "surface" as either a named example string or a faces object;
// "theta"/"phi" as scalars (broadcast) or full lists.  Throws
// std::invalid_argument naming the violated field on malformed input.
ProblemFile problem_from_json(const Json& j);

Json feasibility_to_json(const FeasibilityReport& r);
Json solve_result_to_json(const SolveResult& r);
Json layout_to_json(const LayoutResult& r);

Json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace cpat
