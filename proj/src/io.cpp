#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cpat {

Json surface_to_json(const CellularSurface& s, const std::string& name) {
    Json j;
    j["faces"] = s.face_rows();
    if (!name.empty()) j["name"] = name;
    return j;
}

CellularSurface surface_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("faces") || !j["faces"].is_array())
        throw std::invalid_argument("surface: expected an object with a \"faces\" array");
    std::vector<std::vector<int>> rows;
    for (const auto& row : j["faces"]) {
        if (!row.is_array())
            throw std::invalid_argument("surface: each face must be an array of integers");
        rows.push_back(row.get<std::vector<int>>());
    }
    return CellularSurface::build_from_face_boundaries(rows);
}

namespace {

std::vector<double> broadcast(const Json& j, std::size_t n, const char* field) {
    if (j.is_number()) return std::vector<double>(n, j.get<double>());
    if (j.is_array()) {
        auto v = j.get<std::vector<double>>();
        if (v.size() != n) {
            std::ostringstream msg;
            msg << field << ": expected " << n << " values, got " << v.size();
            throw std::invalid_argument(msg.str());
        }
        return v;
    }
    throw std::invalid_argument(std::string(field) + ": expected a number or a list");
}

}  // namespace

ProblemFile problem_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("problem: expected a JSON object");
    if (!j.contains("surface")) throw std::invalid_argument("problem: missing \"surface\"");

    ProblemFile out;
    const Json& sj = j["surface"];
    if (sj.is_string()) {
        out.surface_name = sj.get<std::string>();
        auto s = named_example(out.surface_name);
        if (!s)
            throw std::invalid_argument("surface: unknown named example \"" +
                                        out.surface_name + "\"");
        out.problem.surface = *s;
    } else {
        out.problem.surface = surface_from_json(sj);
        if (sj.is_object() && sj.contains("name")) out.surface_name = sj["name"];
    }

    if (!j.contains("geometry"))
        throw std::invalid_argument("problem: missing \"geometry\"");
    out.problem.geometry = geometry_from_name(j["geometry"].get<std::string>());

    const std::size_t E = static_cast<std::size_t>(out.problem.surface.num_edges());
    const std::size_t F = static_cast<std::size_t>(out.problem.surface.num_faces());
    if (!j.contains("theta")) throw std::invalid_argument("problem: missing \"theta\"");
    if (!j.contains("phi")) throw std::invalid_argument("problem: missing \"phi\"");
    out.problem.theta = broadcast(j["theta"], E, "theta");
    out.problem.phi = broadcast(j["phi"], F, "phi");

    if (j.contains("tolerance")) out.tolerance = j["tolerance"].get<double>();
    if (!(out.tolerance > 0.0))
        throw std::invalid_argument("tolerance: must be positive");
    if (j.contains("seed")) out.seed = j["seed"].get<unsigned>();

    out.problem.validate();
    return out;
}

Json feasibility_to_json(const FeasibilityReport& r) {
    Json j;
    j["feasible"] = r.feasible;
    j["epsilon"] = r.epsilon;
    j["near_boundary"] = r.near_boundary;
    if (r.feasible)
        j["flow_angles"] = r.flow_angles.phi;
    else
        j["witness_faces"] = r.witness_faces;
    return j;
}

Json solve_result_to_json(const SolveResult& r) {
    Json j;
    j["rho"] = r.rho;
    j["gradient_inf_norm"] = r.gradient_inf_norm;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["diverged"] = r.diverged;
    j["infeasible_detected"] = r.infeasible_detected;
    j["t_star"] = r.t_star;
    j["message"] = r.message;
    return j;
}

Json layout_to_json(const LayoutResult& r) {
    Json j;
    j["geometry"] = geometry_name(r.geometry);
    Json centers = Json::array();
    for (const auto& c : r.centers) {
        if (c)
            centers.push_back(Json::array({std::real(c->z1), std::imag(c->z1),
                                           std::real(c->z2), std::imag(c->z2)}));
        else
            centers.push_back(nullptr);
    }
    j["centers"] = std::move(centers);
    Json vertices = Json::array();
    for (const auto& v : r.vertices) {
        if (v)
            vertices.push_back(Json::array({std::real(v->z1), std::imag(v->z1),
                                            std::real(v->z2), std::imag(v->z2)}));
        else
            vertices.push_back(nullptr);
    }
    j["vertices"] = std::move(vertices);
    Json circles = Json::array();
    for (const auto& c : r.circles) {
        if (c)
            circles.push_back(Json::array(
                {c->h11, std::real(c->h12), std::imag(c->h12), c->h22}));
        else
            circles.push_back(nullptr);
    }
    j["circles"] = std::move(circles);
    Json angles = Json::array();
    for (double a : r.edge_angles) {
        if (std::isnan(a))
            angles.push_back(nullptr);
        else
            angles.push_back(a);
    }
    j["edge_angles"] = std::move(angles);
    j["holonomy_residual"] = r.holonomy_residual;
    j["nontrivial_holonomies"] = r.holonomies.size();
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
}

}  // namespace cpat
