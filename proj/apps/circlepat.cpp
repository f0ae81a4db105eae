// circlepat: circle pattern toolkit.
//   circlepat <check|solve|layout|verify|render> problem.json [flags]
// Exit codes: 0 ok, 1 verification failure, 2 malformed input, 3 infeasible,
// 4 solver non-convergence.

#include <cmath>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "../src/io.hpp"
#include "../src/render.hpp"

namespace {

using namespace cpat;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kMalformed = 2;
constexpr int kInfeasible = 3;
constexpr int kNoConvergence = 4;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text << "\n";
    else
        save_text_file(out_path, text + "\n");
}

std::vector<double> starting_point(const ProblemFile& pf, bool use_seed) {
    const std::size_t F = static_cast<std::size_t>(pf.problem.surface.num_faces());
    if (!use_seed) {
        if (pf.problem.geometry == Geometry::kHyperbolic)
            return std::vector<double>(F, -1.0);
        return std::vector<double>(F, 0.0);
    }
    std::mt19937 rng(pf.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> rho(F);
    for (double& r : rho)
        r = pf.problem.geometry == Geometry::kHyperbolic ? -1.0 + 0.5 * u(rng) : u(rng);
    return rho;
}

int solve_with_status(const ProblemFile& pf, bool use_seed, SolveResult& res) {
    SolveOptions opt;
    opt.tolerance = pf.tolerance;
    res = solve(pf.problem, starting_point(pf, use_seed), opt);
    if (res.infeasible_detected || res.diverged) return kInfeasible;
    if (!res.converged) return kNoConvergence;
    return kOk;
}

int run_check(const ProblemFile& pf, const std::string& out_path) {
    const FeasibilityReport rep = feasibility(pf.problem);
    emit(feasibility_to_json(rep).dump(2), out_path);
    return rep.feasible ? kOk : kInfeasible;
}

int run_solve(const ProblemFile& pf, bool use_seed, const std::string& out_path) {
    SolveResult res;
    const int status = solve_with_status(pf, use_seed, res);
    Json j = solve_result_to_json(res);
    const CellularSurface& s = pf.problem.surface;
    j["counts"] = std::to_string(s.num_faces()) + " faces, " +
                  std::to_string(s.num_edges()) + " edges, " +
                  std::to_string(s.num_vertices()) + " vertices";
    emit(j.dump(2), out_path);
    std::cerr << s.num_faces() << " faces, " << s.num_edges() << " edges, "
              << s.num_vertices() << " vertices\n";
    return status;
}

int run_layout(const ProblemFile& pf, bool use_seed, const std::string& out_path) {
    SolveResult res;
    const int status = solve_with_status(pf, use_seed, res);
    if (status != kOk) {
        emit(solve_result_to_json(res).dump(2), out_path);
        return status;
    }
    emit(layout_to_json(layout_pattern(pf.problem, res.rho)).dump(2), out_path);
    return kOk;
}

int run_render(const ProblemFile& pf, bool use_seed, const std::string& view,
               const std::string& out_path) {
    SolveResult res;
    const int status = solve_with_status(pf, use_seed, res);
    if (status != kOk) {
        std::cerr << "solve failed: " << res.message << "\n";
        return status;
    }
    RenderOptions opt;
    opt.view = view;
    emit(render_svg(layout_pattern(pf.problem, res.rho), opt), out_path);
    return kOk;
}

int run_verify(const ProblemFile& pf, bool use_seed, const std::string& out_path) {
    SolveResult res;
    const int status = solve_with_status(pf, use_seed, res);
    if (status != kOk) {
        emit(solve_result_to_json(res).dump(2), out_path);
        return status;
    }
    const PatternProblem& p = pf.problem;
    Json j;
    bool ok = true;
    const auto record = [&](const std::string& key, double err, double tol) {
        j[key] = err;
        j[key + "_tolerance"] = tol;
        if (!(err <= tol)) {
            ok = false;
            j[key + "_failed"] = true;
        }
    };

    const EnergyReport er = energy_eval(p, res.rho);
    record("euler_lagrange_residual", er.gradient_inf_norm, 10.0 * pf.tolerance);

    const AngleSystem angles = angles_from_rho(p, res.rho);
    const ValidationReport val = validate_angles(p, angles);
    j["coherent_angles"] = val.valid;
    if (!val.valid) {
        ok = false;
        j["coherent_angle_violations"] = val.violations;
    }

    if (p.geometry != Geometry::kSpherical)
        record("duality_gap", std::abs(s_hat(p, angles) - er.value), 1e-8);
    else
        record("area_defect", std::abs(area_defect(p, res.rho)), 1e-8);

    if (p.geometry == Geometry::kHyperbolic) {
        // volume certificate: the kite volumes must add up to the dual value
        double total = 0.0;
        std::size_t m = 0;
        for (int k = 0; k < p.surface.num_edges(); ++k) {
            if (!p.surface.edge_is_interior(k)) continue;
            total += volume_p(p.theta[static_cast<std::size_t>(k)],
                              angles.phi[2 * m], angles.phi[2 * m + 1])
                         .value;
            ++m;
        }
        record("volume_identity_gap", std::abs(total - s_hat(p, angles)), 1e-9);
    }

    const LayoutResult lay = layout_pattern(p, res.rho);
    record("holonomy_residual", lay.holonomy_residual, 1e-8);
    double angle_err = 0.0;
    int measured = 0;
    for (int k = 0; k < p.surface.num_edges(); ++k) {
        const double a = lay.edge_angles[static_cast<std::size_t>(k)];
        if (std::isnan(a)) continue;
        angle_err = std::max(angle_err,
                             std::abs(a - p.theta[static_cast<std::size_t>(k)]));
        ++measured;
    }
    j["edges_measured"] = measured;
    record("intersection_angle_error", angle_err, 1e-8);

    j["pass"] = ok;
    emit(j.dump(2), out_path);
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle pattern toolkit: feasibility, solving, layout, rendering"};
    app.require_subcommand(0, 0);

    std::string command, problem_path, out_path, view = "plane";
    std::string geometry_flag, theta_flag, phi_flag;
    double tolerance_flag = -1.0;
    long long seed_flag = -1;

    app.add_option("command", command, "check|solve|layout|verify|render")->required();
    app.add_option("problem", problem_path, "problem JSON file")->required();
    app.add_option("--geometry", geometry_flag, "override: euclidean|hyperbolic|spherical");
    app.add_option("--theta", theta_flag, "override: crossing angle (number, broadcast)");
    app.add_option("--phi", phi_flag, "override: cone angle (number, broadcast)");
    app.add_option("--tolerance", tolerance_flag, "override: solver tolerance");
    app.add_option("--seed", seed_flag, "random starting point seed");
    app.add_option("--view", view, "render view: plane|stereographic");
    app.add_option("--out", out_path, "output file (default: stdout)");
    CLI11_PARSE(app, argc, argv);

    try {
        Json j = cpat::load_json_file(problem_path);
        if (!geometry_flag.empty()) j["geometry"] = geometry_flag;
        if (!theta_flag.empty()) j["theta"] = std::stod(theta_flag);
        if (!phi_flag.empty()) j["phi"] = std::stod(phi_flag);
        if (tolerance_flag > 0.0) j["tolerance"] = tolerance_flag;
        bool use_seed = j.contains("seed");
        if (seed_flag >= 0) {
            j["seed"] = static_cast<unsigned>(seed_flag);
            use_seed = true;
        }
        const ProblemFile pf = problem_from_json(j);

        if (command == "check") return run_check(pf, out_path);
        if (command == "solve") return run_solve(pf, use_seed, out_path);
        if (command == "layout") return run_layout(pf, use_seed, out_path);
        if (command == "verify") return run_verify(pf, use_seed, out_path);
        if (command == "render") return run_render(pf, use_seed, view, out_path);
        std::cerr << "unknown command: " << command << "\n";
        return kMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const cpat::SurfaceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    }
}
