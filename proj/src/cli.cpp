#include "jfod/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "jfod/io.hpp"

namespace jfod::cli {

namespace {

using io::json;

// Certificate thresholds; echoed into every report.
constexpr double kThetaResidualTol = 1e-7;
constexpr double kJointNormTol = 1e-10;
constexpr double kCommutatorTol = 1e-7;
constexpr double kSpectrumTol = 1e-7;
constexpr double kDescentGapTol = 1e-3;

class CertificateFailure : public Error {
public:
    using Error::Error;
};

struct Options {
    std::string problem_path;
    std::string out_path;
    std::uint64_t seed = 0;
    long long starts = 20;
    bool tol_report = false;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::ParseError("cannot read problem file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw io::ParseError(std::string("invalid JSON: ") + e.what());
    }
}

json tolerances() {
    return {{"eigensolverOffDiagonalRel", 1e-14},
            {"hermitianSymmetryAbs", HermitianMatrix::kSymmetryTolerance},
            {"majorizationRel", 1e-9},
            {"thetaResidualRel", kThetaResidualTol},
            {"jointNormRel", kJointNormTol},
            {"commutatorAbs", kCommutatorTol},
            {"spectrumAbs", kSpectrumTol},
            {"descentGapRel", kDescentGapTol}};
}

json base_report(const char* command, const InitialData& init, const WaterfillSolution& wf,
                 const OptimalSpectra& spectra) {
    json report = io::solution_to_json(wf, spectra);
    report["schemaVersion"] = io::kSchemaVersion;
    report["command"] = command;
    report["weights"] = init.problem.weights;
    report["dims"] = init.problem.dims;
    report["spectra"] = io::vectors_to_json(init.problem.spectra);
    report["tolerances"] = tolerances();
    report["certificates"] = {{"blockMajorization", verify_certificates(init.problem, wf)}};
    return report;
}

void require_certificates(const json& report) {
    if (!report.at("certificates").at("ok").get<bool>())
        throw CertificateFailure("one or more certificates failed; see the report");
}

json cmd_solve(const Options&, const InitialData& init) {
    const auto wf = compute_b(init.problem);
    const auto spectra = compute_optimal_spectra(init.problem, wf);
    json report = base_report("solve", init, wf, spectra);
    report["certificates"]["ok"] = report["certificates"]["blockMajorization"];
    return report;
}

json cmd_synthesize(const Options&, const InitialData& init) {
    const auto& p = init.problem;
    const auto wf = compute_b(p);
    const auto spectra = compute_optimal_spectra(p, wf);
    json report = base_report("synthesize", init, wf, spectra);

    const Design design = synthesize_optimal_design(p, spectra, init.bases);
    const auto ops = design.frame_operators();
    const double value = jfod_squared(init.operators, ops);
    const double theta_residual = std::abs(value - spectra.min_value) / (1.0 + spectra.min_value);
    const double norm_residual = design.joint_norm_residual(p.weights);

    std::vector<double> commutators;
    std::vector<double> spectrum_deviation;
    for (std::size_t j = 0; j < ops.size(); ++j) {
        commutators.push_back(commutator_norm(ops[j], init.operators[j]));
        auto gap = eig_hermitian(init.operators[j] - ops[j]).values;
        RealVector delta = spectra.delta[j];
        std::sort(delta.begin(), delta.end(), std::greater<>{});
        double worst = 0.0;
        for (std::size_t i = 0; i < gap.size(); ++i) worst = std::max(worst, std::abs(gap[i] - delta[i]));
        spectrum_deviation.push_back(worst);
    }

    auto& c = report["certificates"];
    c["theta"] = value;
    c["thetaResidual"] = theta_residual;
    c["jointNormResidual"] = norm_residual;
    c["commutatorNorms"] = commutators;
    c["spectrumDeviation"] = spectrum_deviation;
    const bool ok = c["blockMajorization"].get<bool>() && theta_residual <= kThetaResidualTol &&
                    norm_residual <= kJointNormTol &&
                    std::all_of(commutators.begin(), commutators.end(), [](double x) { return x <= kCommutatorTol; }) &&
                    std::all_of(spectrum_deviation.begin(), spectrum_deviation.end(),
                                [](double x) { return x <= kSpectrumTol; });
    c["ok"] = ok;
    report["synthesizedDesign"] = io::design_to_json(design);
    return report;
}

json cmd_descend(const Options& opt, const InitialData& init) {
    const auto& p = init.problem;
    const auto wf = compute_b(p);
    const auto spectra = compute_optimal_spectra(p, wf);
    json report = base_report("descend", init, wf, spectra);

    const auto k = static_cast<std::size_t>(opt.starts);
    std::vector<std::future<DescentTrace>> runs;
    for (std::size_t s = 0; s < k; ++s) {
        runs.push_back(std::async(std::launch::async, [&init, &p, seed = opt.seed + s] {
            DescentConfig config;
            config.seed = seed;
            return descend(init.operators, p.weights, random_design(p.weights, p.dims, seed), config);
        }));
    }

    json list = json::array();
    double worst = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
        const DescentTrace trace = runs[s].get();
        const double final_value = trace.iterates.back();
        const double gap = final_value - spectra.min_value;
        const double rel = std::abs(gap) / (1.0 + spectra.min_value);
        worst = std::max(worst, rel);
        const bool monotone = std::is_sorted(trace.iterates.rbegin(), trace.iterates.rend());
        list.push_back({{"seed", opt.seed + s},
                        {"finalValue", final_value},
                        {"gap", gap},
                        {"relativeGap", rel},
                        {"iterations", trace.iterates.size() - 1},
                        {"gradNorm", trace.grad_norm},
                        {"converged", trace.converged},
                        {"stalled", trace.stalled},
                        {"monotone", monotone}});
    }
    report["descentSummary"] = {{"starts", k}, {"seed", opt.seed}, {"runs", list}, {"maxRelativeGap", worst}};
    auto& c = report["certificates"];
    c["descentWithinTolerance"] = worst <= kDescentGapTol;
    c["ok"] = c["blockMajorization"].get<bool>() && worst <= kDescentGapTol;
    return report;
}

json cmd_gframe(const Options& opt) {
    const auto file = io::parse_gframe_problem(read_json(opt.problem_path));
    const HermitianMatrix a(file.a);
    const auto sol = gframe_optimize(a, file.weights, file.analysis_dim);

    json ops = json::array();
    for (const auto& t : sol.family.operators) ops.push_back(io::matrix_to_json(t));
    json schatten = json::array();
    for (const auto& s : sol.schatten) {
        json p = std::isinf(s.p) ? json("inf") : json(s.p);
        schatten.push_back({{"p", p}, {"value", s.value}});
    }

    const RealVector norms = sol.family.squared_norms();
    double norm_residual = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i)
        norm_residual = std::max(norm_residual, std::abs(norms[i] - file.weights[i]) / file.weights[i]);
    const double achieved = std::pow((a.matrix() - sol.frame_operator.matrix()).frobenius_norm(), 2);
    const double residual = std::abs(achieved - sol.min_value) / (1.0 + sol.min_value);
    const double commutator = commutator_norm(a, sol.frame_operator);
    const bool blocks = verify_certificates(sol.reduced, sol.waterfill);

    json report = {{"schemaVersion", io::kSchemaVersion},
                   {"command", "gframe"},
                   {"weights", file.weights},
                   {"analysisDim", file.analysis_dim},
                   {"expandedWeights", sol.reduced.weights},
                   {"spectrum", sol.reduced.spectra.front()},
                   {"feasible", sol.feasible},
                   {"minValue", sol.min_value},
                   {"bVector", sol.waterfill.b},
                   {"delta", sol.spectra.delta.front()},
                   {"operators", ops},
                   {"frameOperator", io::matrix_to_json(sol.frame_operator.matrix())},
                   {"schatten", schatten},
                   {"tolerances", tolerances()}};
    report["certificates"] = {{"blockMajorization", blocks},
                              {"normResidual", norm_residual},
                              {"valueResidual", residual},
                              {"commutatorNorm", commutator},
                              {"ok", blocks && norm_residual <= kJointNormTol && residual <= kThetaResidualTol &&
                                         commutator <= kCommutatorTol}};
    return report;
}

void write_tolerance_report(const json& report, std::ostream& err) {
    err << "tolerances:\n";
    for (const auto& [key, value] : report.at("tolerances").items()) err << "  " << key << " = " << value << "\n";
    err << "certificates:\n";
    for (const auto& [key, value] : report.at("certificates").items()) err << "  " << key << " = " << value.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal (alpha, d)-designs for the joint frame operator distance", "jfod"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("problem", opt.problem_path, "problem file (JSON)")->required();
        sub->add_option("--out", opt.out_path, "write the report here instead of stdout");
        sub->add_option("--seed", opt.seed, "base seed")->default_val(0);
        sub->add_flag("--tol-report", opt.tol_report, "print tolerances and certificates to stderr");
    };
    auto* solve = app.add_subcommand("solve", "compute b, delta_j and the minimal value");
    auto* synth = app.add_subcommand("synthesize", "also construct an optimal design and certify it");
    auto* desc = app.add_subcommand("descend", "projected gradient descent from seeded random starts");
    auto* gframe = app.add_subcommand("gframe", "optimal G-frame approximation");
    for (auto* sub : {solve, synth, desc, gframe}) add_common(sub);
    desc->add_option("--starts", opt.starts, "number of random starts")->default_val(20);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kMalformedInput;
    }

    try {
        json report;
        if (gframe->parsed()) {
            report = cmd_gframe(opt);
        } else {
            if (desc->parsed() && opt.starts <= 0) throw io::ParseError("--starts must be positive");
            const auto file = io::parse_problem(read_json(opt.problem_path));
            const InitialData init = io::to_initial_data(file);
            if (solve->parsed()) report = cmd_solve(opt, init);
            if (synth->parsed()) report = cmd_synthesize(opt, init);
            if (desc->parsed()) report = cmd_descend(opt, init);
        }
        report["seed"] = opt.seed;

        const std::string text = report.dump(2) + "\n";
        if (opt.out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(opt.out_path, std::ios::binary);
            if (!file) throw io::ParseError("cannot write report to '" + opt.out_path + "'");
            file << text;
        }
        if (opt.tol_report) write_tolerance_report(report, err);
        require_certificates(report);
        return kSuccess;
    } catch (const io::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kMalformedInput;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kInvariantViolation;
    } catch (const CertificateFailure& e) {
        err << "error: " << e.what() << "\n";
        return kCertificateFailure;
    } catch (const Error& e) {
        err << "internal error: " << e.what() << "\n";
        return kCertificateFailure;
    }
}

}  // namespace jfod::cli
