// daqc: compile and analyse digital-analog schedules from the command line.
//
// Exit codes: 0 ok, 1 verification failed, 2 usage or unreadable input,
// 3 incompatible input, 4 cap exceeded, 5 numerical failure.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "daqc/compiler.hpp"
#include "daqc/error.hpp"
#include "daqc/experiments.hpp"
#include "daqc/io.hpp"
#include "daqc/polytope.hpp"
#include "daqc/verification.hpp"

namespace {

using namespace daqc;
using io::json;

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidArgument:
        case ErrorKind::InvalidSize:
            return 2;
        case ErrorKind::IncompatiblePair:
        case ErrorKind::EmptyProblem:
        case ErrorKind::EmptySelection:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::WrongModel:
            return 3;
        case ErrorKind::SizeCapExceeded:
        case ErrorKind::CapExceeded:
            return 4;
        case ErrorKind::NumericalFailure:
        case ErrorKind::DegenerateHull:
            return 5;
    }
    return 5;
}

std::pair<int, int> parse_range(const std::string& s) {
    try {
        const auto dots = s.find("..");
        if (dots == std::string::npos) {
            const int n = std::stoi(s);
            return {n, n};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "bad qubit range '" + s + "' (expected N or A..B)");
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    try {
        while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "bad qubit list '" + s + "'");
    }
    return out;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_text_file(path, text);
    }
}

struct Options {
    std::string problem, source, schedule, out, jsonl, matrix_csv, model = "zz", n_range = "3", qubits = "1,2,3",
                                                                  triple = "XX,YY,ZZ", signs = "---";
    std::vector<std::string> dists;
    double T = 1.0, alpha = 1.0, tol = 1e-8;
    int n = 3, samples = 1000, workers = 1, dense_cap = 10;
    std::uint64_t seed = 1;
    std::size_t column_cap = kDefaultColumnCap;
    bool solve = false, matrix = false, unitary = false, all = false;
};

int cmd_compile(const Options& o) {
    const TwoBodyHamiltonian hP = io::hamiltonian_from_json(io::read_json_file(o.problem));
    const TwoBodyHamiltonian hS = io::hamiltonian_from_json(io::read_json_file(o.source));
    CompileOptions opts;
    opts.column_cap = o.column_cap;
    CompileResult result = compile_detailed(hP, hS, o.T, opts);
    result.schedule.problem_ref = o.problem;
    result.schedule.source_ref = o.source;
    io::write_text_file(o.out, io::to_json(result.schedule).dump(2) + "\n");
    std::cout << io::to_json(result.bounds).dump() << "\n";
    return 0;
}

int cmd_bounds(const Options& o) {
    const TwoBodyHamiltonian hP = io::hamiltonian_from_json(io::read_json_file(o.problem));
    const TwoBodyHamiltonian hS = io::hamiltonian_from_json(io::read_json_file(o.source));
    const ProblemVector b = build_problem_vector(hP, hS, o.T);
    BoundsReport report = bounds_report(b, hP.n());
    if (o.solve) {
        const LpSolution sol = solve_problem(b, o.column_cap);
        if (sol.status != LpStatus::Optimal) throw Error(ErrorKind::NumericalFailure, "solve failed");
        report.achieved = sol.objective;
    }
    std::cout << io::to_json(report).dump() << "\n";
    return 0;
}

int cmd_verify(const Options& o) {
    const Schedule schedule = io::schedule_from_json(io::read_json_file(o.schedule));
    const TwoBodyHamiltonian hP = io::hamiltonian_from_json(io::read_json_file(o.problem));
    const TwoBodyHamiltonian hS = io::hamiltonian_from_json(io::read_json_file(o.source));
    VerificationReport report = verify_couplings(schedule, hS, hP, o.tol);
    if (o.matrix) report.merge(matrix_oracle(schedule, hS, hP, o.tol, o.dense_cap));
    if (o.unitary) report.merge(zz_unitary_oracle(schedule, hS, hP, o.tol, o.dense_cap));
    std::cout << io::to_json(report).dump() << "\n";
    return report.pass() ? 0 : 1;
}

json solved_problem_json(const ProblemVector& b, std::size_t cap) {
    const LpSolution sol = solve_problem(b, cap);
    if (sol.status != LpStatus::Optimal) throw Error(ErrorKind::NumericalFailure, "solve failed");
    BoundsReport bounds = bounds_report(b, b.n);
    bounds.achieved = sol.objective;
    return {{"problem", io::to_json(b)}, {"bounds", io::to_json(bounds)}};
}

int cmd_worst_case(const Options& o) {
    const ModelKind model = parse_model(o.model);
    std::string text;
    if (o.all) {
        for (const ProblemVector& b : enumerate_worst_directions(o.n, model)) text += solved_problem_json(b, o.column_cap).dump() + "\n";
    } else {
        WorstCaseSupport support;
        support.qubits = parse_int_list(o.qubits);
        if (model == ModelKind::General) support.axis_triple = parse_axis_triple(o.triple);
        const ProblemVector b = worst_case_problem(o.n, model, support, parse_sign_pattern(o.signs), o.alpha);
        text = solved_problem_json(b, o.column_cap).dump(2) + "\n";
    }
    emit(o.out, text);
    return 0;
}

int cmd_polytope(const Options& o) {
    const ModelKind model = parse_model(o.model);
    const SignMatrix M = build_sign_matrix(o.n, model, o.column_cap);
    if (!o.matrix_csv.empty()) io::write_text_file(o.matrix_csv, io::sign_matrix_csv(M));
    const FacetSet facets = facet_enumeration(M);
    const double r = inradius(facets);
    const FacetCenterReport centers = facet_center_problems(facets, M, std::sqrt(static_cast<double>(M.rows())));
    int nearest = 0;
    for (const Facet& f : facets.facets)
        if (std::abs(f.distance() - r) <= 1e-9) ++nearest;
    json report{{"model", model_name(model)},
                {"n", o.n},
                {"dim", M.rows()},
                {"vertices", M.cols()},
                {"facets", facets.facets.size()},
                {"inradius", r},
                {"nearest_facets", nearest},
                {"facet_center_max", centers.max_objective},
                {"upper_bound", std::sqrt(3.0 * M.rows())}};
    if (!o.out.empty()) io::write_text_file(o.out, io::to_json(facets).dump() + "\n");
    std::cout << report.dump() << "\n";
    return 0;
}

int cmd_sweep(const Options& o) {
    SweepConfig cfg;
    cfg.model = parse_model(o.model);
    std::tie(cfg.n_min, cfg.n_max) = parse_range(o.n_range);
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    cfg.column_cap = o.column_cap;
    cfg.keep_samples = !o.jsonl.empty();
    if (!o.dists.empty()) {
        cfg.kinds.clear();
        for (const std::string& d : o.dists) cfg.kinds.push_back(parse_distribution(d));
    }
    const SweepResult result = run_sweep(cfg);
    emit(o.out, sweep_csv(result.records));
    if (!o.jsonl.empty()) {
        std::string lines;
        for (const SampleResult& s : result.samples) lines += io::to_json(s, cfg.model).dump() + "\n";
        io::write_text_file(o.jsonl, lines);
    }
    return 0;
}

int cmd_gap_search(const Options& o) {
    const ModelKind model = parse_model(o.model);
    const std::vector<GapRecord> records = conjecture_gap_search(o.n, model, o.samples, o.seed, o.workers, o.column_cap);
    std::string lines;
    int violations = 0;
    double worst = 0.0;
    for (const GapRecord& r : records) {
        lines += io::to_json(r).dump() + "\n";
        violations += r.violation ? 1 : 0;
        worst = std::max(worst, r.ratio);
    }
    emit(o.out, lines);
    std::cerr << json{{"records", records.size()}, {"violations", violations}, {"max_ratio", worst}}.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Digital-analog schedule compiler and bound analysis"};
    app.require_subcommand(1);
    Options o;

    auto* compile_cmd = app.add_subcommand("compile", "Compile a schedule for a problem/source Hamiltonian pair");
    compile_cmd->add_option("--problem", o.problem, "Problem Hamiltonian JSON")->required();
    compile_cmd->add_option("--source", o.source, "Source Hamiltonian JSON")->required();
    compile_cmd->add_option("--time,-T", o.T, "Target evolution time")->check(CLI::NonNegativeNumber);
    compile_cmd->add_option("--out,-o", o.out, "Schedule JSON output path")->required();
    compile_cmd->add_option("--column-cap", o.column_cap, "Maximum number of gate layers");

    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the time bounds for a Hamiltonian pair");
    bounds_cmd->add_option("--problem", o.problem)->required();
    bounds_cmd->add_option("--source", o.source)->required();
    bounds_cmd->add_option("--time,-T", o.T)->check(CLI::NonNegativeNumber);
    bounds_cmd->add_flag("--solve", o.solve, "Also report the achieved optimal time");
    bounds_cmd->add_option("--column-cap", o.column_cap);

    auto* verify_cmd = app.add_subcommand("verify", "Check a schedule against its Hamiltonians");
    verify_cmd->add_option("--schedule", o.schedule)->required();
    verify_cmd->add_option("--problem", o.problem)->required();
    verify_cmd->add_option("--source", o.source)->required();
    verify_cmd->add_option("--tol", o.tol, "Relative tolerance");
    verify_cmd->add_flag("--matrix", o.matrix, "Run the dense Hamiltonian check");
    verify_cmd->add_flag("--unitary", o.unitary, "Run the exact unitary check (ZZ only)");
    verify_cmd->add_option("--dense-cap", o.dense_cap, "Largest n for dense checks");

    auto* worst_cmd = app.add_subcommand("worst-case", "Build and solve a saturating problem");
    worst_cmd->add_option("--model", o.model)->check(CLI::IsMember({"zz", "general"}));
    worst_cmd->add_option("--n", o.n)->required();
    worst_cmd->add_option("--qubits", o.qubits, "Triangle (zz) or pair (general), e.g. 1,2,4");
    worst_cmd->add_option("--triple", o.triple, "Axis triple for the general model, e.g. XX,YZ,ZY");
    worst_cmd->add_option("--signs", o.signs, "One of ---, -++, +-+, ++-");
    worst_cmd->add_option("--alpha", o.alpha)->check(CLI::PositiveNumber);
    worst_cmd->add_flag("--all", o.all, "Enumerate every worst direction (zz)");
    worst_cmd->add_option("--out,-o", o.out);
    worst_cmd->add_option("--column-cap", o.column_cap);

    auto* poly_cmd = app.add_subcommand("polytope", "Enumerate facets and compute the inradius");
    poly_cmd->add_option("--model", o.model)->check(CLI::IsMember({"zz", "general"}));
    poly_cmd->add_option("--n", o.n)->required();
    poly_cmd->add_option("--out,-o", o.out, "Facet JSON output path");
    poly_cmd->add_option("--matrix-csv", o.matrix_csv, "Sign matrix CSV output path");
    poly_cmd->add_option("--column-cap", o.column_cap);

    auto* sweep_cmd = app.add_subcommand("sweep", "Randomized bound sweep, one CSV row per (n, distribution)");
    sweep_cmd->add_option("--model", o.model)->check(CLI::IsMember({"zz", "general"}));
    sweep_cmd->add_option("--n", o.n_range, "Qubit range, e.g. 3..10")->required();
    sweep_cmd->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", o.seed);
    sweep_cmd->add_option("--dist", o.dists, "uniform_sphere, axes_perturbed, sparse_axes (default: all)");
    sweep_cmd->add_option("--workers", o.workers)->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out,-o", o.out, "CSV output path (default stdout)");
    sweep_cmd->add_option("--jsonl", o.jsonl, "Per-sample JSONL output path");
    sweep_cmd->add_option("--column-cap", o.column_cap);

    auto* gap_cmd = app.add_subcommand("gap-search", "Compare optimal times with the linear conjectured bound");
    gap_cmd->add_option("--model", o.model)->check(CLI::IsMember({"zz", "general"}));
    gap_cmd->add_option("--n", o.n)->required();
    gap_cmd->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
    gap_cmd->add_option("--seed", o.seed);
    gap_cmd->add_option("--workers", o.workers)->check(CLI::PositiveNumber);
    gap_cmd->add_option("--out,-o", o.out, "JSONL output path (default stdout)");
    gap_cmd->add_option("--column-cap", o.column_cap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*compile_cmd) return cmd_compile(o);
        if (*bounds_cmd) return cmd_bounds(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*worst_cmd) return cmd_worst_case(o);
        if (*poly_cmd) return cmd_polytope(o);
        if (*sweep_cmd) return cmd_sweep(o);
        if (*gap_cmd) return cmd_gap_search(o);
    } catch (const Error& e) {
        std::cout << io::error_json(e).dump() << "\n";
        return exit_code(e.kind());
    }
    return 2;
}
