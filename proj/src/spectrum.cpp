#include "jfod/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "jfod/errors.hpp"
#include "jfod/majorization.hpp"

namespace jfod {

void ProblemData::validate() const {
    if (weights.empty()) throw InvalidProblem("weights must be non-empty");
    for (double a : weights)
        if (!(a > 0.0) || !std::isfinite(a)) throw InvalidProblem("weights must be positive");
    if (!std::is_sorted(weights.begin(), weights.end(), std::greater<>{}))
        throw InvalidProblem("weights must be non-increasing");
    if (dims.empty()) throw InvalidProblem("dims must be non-empty");
    for (std::size_t d : dims)
        if (d == 0) throw InvalidProblem("dims must be positive");
    if (!std::is_sorted(dims.begin(), dims.end(), std::greater<>{}))
        throw InvalidProblem("dims must be non-increasing");
    if (dims.front() > weights.size()) throw InvalidProblem("dims[0] must not exceed the number of weights");
    if (spectra.size() != dims.size()) throw InvalidProblem("one spectrum per space is required");
    for (std::size_t j = 0; j < dims.size(); ++j) {
        const auto& l = spectra[j];
        if (l.size() != dims[j])
            throw InvalidProblem("spectrum " + std::to_string(j) + " must have length dims[" + std::to_string(j) + "]");
        for (double v : l)
            if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidProblem("spectra must be non-negative");
        if (!std::is_sorted(l.begin(), l.end(), std::greater<>{}))
            throw InvalidProblem("spectra must be non-increasing");
    }
}

double ProblemData::max_eigenvalue() const {
    double m = 0.0;
    for (const auto& l : spectra)
        if (!l.empty()) m = std::max(m, l.front());
    return m;
}

InitialData initial_data_from_operators(RealVector weights, std::vector<HermitianMatrix> operators) {
    InitialData out;
    out.problem.weights = std::move(weights);
    for (const auto& s : operators) {
        auto eig = eig_hermitian(s);
        const double floor = -1e-10 * std::max(1.0, s.frobenius_norm());
        for (double& v : eig.values) {
            if (v < floor) throw InvalidProblem("initial operators must be positive semidefinite");
            v = std::max(v, 0.0);
        }
        out.problem.dims.push_back(s.dim());
        out.problem.spectra.push_back(std::move(eig.values));
        out.bases.push_back(std::move(eig.vectors));
    }
    out.operators = std::move(operators);
    out.problem.validate();
    return out;
}

InitialData initial_data_from_families(RealVector weights, std::span<const VectorFamily> families) {
    std::vector<HermitianMatrix> ops;
    ops.reserve(families.size());
    for (const auto& f : families) ops.push_back(frame_operator(f));
    return initial_data_from_operators(std::move(weights), std::move(ops));
}

InitialData initial_data_from_spectra(ProblemData problem) {
    problem.validate();
    InitialData out;
    for (const auto& l : problem.spectra) {
        out.operators.push_back(HermitianMatrix::from_diagonal(l));
        out.bases.push_back(Matrix::identity(l.size()));
    }
    out.problem = std::move(problem);
    return out;
}

RealVector row_levels(const ProblemData& problem, std::size_t row) {
    RealVector out;
    for (std::size_t j = 0; j < problem.dims.size(); ++j)
        if (row < problem.dims[j]) out.push_back(problem.spectra[j][row]);
    return out;
}

namespace {

struct Candidate {
    double constant = 0.0;
    RealVector row_mass;
    bool majorized = false;
};

// Rows [first, last] against weights [first, last_weight].
Candidate evaluate_block(const ProblemData& problem, std::size_t first, std::size_t last, std::size_t last_weight) {
    const auto& w = problem.weights;
    const double weight_sum = std::accumulate(w.begin() + static_cast<std::ptrdiff_t>(first),
                                              w.begin() + static_cast<std::ptrdiff_t>(last_weight) + 1, 0.0);
    std::vector<RealVector> rows;
    for (std::size_t i = first; i <= last; ++i) rows.push_back(row_levels(problem, i));

    Candidate c;
    c.constant = waterfill_solve(weight_sum, rows);
    for (const auto& r : rows) c.row_mass.push_back(waterfill_mass(r, c.constant));
    const std::span<const double> block_weights(w.data() + first, last_weight - first + 1);
    c.majorized = majorizes(block_weights, c.row_mass);
    return c;
}

}  // namespace

WaterfillSolution compute_b(const ProblemData& problem) {
    problem.validate();
    const std::size_t d1 = problem.dims.front();
    const std::size_t n = problem.vector_count();

    WaterfillSolution wf;
    wf.cuts.push_back(0);
    std::size_t start = 0;
    while (start < d1) {
        bool accepted = false;
        // Largest passing candidate end row; reaching the last row pulls in
        // every remaining weight.
        for (std::size_t end = d1; end > start; --end) {
            const std::size_t last_row = end - 1;
            const bool final_block = end == d1;
            const std::size_t last_weight = final_block ? n - 1 : last_row;
            Candidate c = evaluate_block(problem, start, last_row, last_weight);
            ++wf.candidates_tested;
            if (!c.majorized) continue;

            if (!wf.constants.empty()) {
                const double prev = wf.constants.back();
                const double slack = 1e-12 * (1.0 + std::abs(prev));
                if (c.constant <= prev - slack)
                    throw InternalContradiction("block constants are not increasing at row " +
                                                std::to_string(start));
            }
            BlockCertificate cert;
            cert.first_row = start;
            cert.last_row = last_row;
            cert.last_weight = last_weight;
            cert.constant = c.constant;
            cert.row_mass = std::move(c.row_mass);
            cert.majorized = true;
            cert.final_block = final_block;
            wf.certificates.push_back(std::move(cert));

            wf.constants.push_back(c.constant);
            wf.sizes.push_back(end - start);
            wf.cuts.push_back(end);
            wf.b.insert(wf.b.end(), end - start, c.constant);
            start = end;
            accepted = true;
            break;
        }
        if (!accepted)
            throw InternalContradiction("no candidate block starting at row " + std::to_string(start) +
                                        " satisfies the majorization test");
    }
    return wf;
}

OptimalSpectra compute_optimal_spectra(const ProblemData& problem, const WaterfillSolution& wf) {
    OptimalSpectra out;
    out.translation = problem.max_eigenvalue();
    const double m = out.translation;
    for (std::size_t j = 0; j < problem.dims.size(); ++j) {
        const auto& l = problem.spectra[j];
        RealVector delta(l.size());
        RealVector nu(l.size());
        RealVector mu(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) {
            delta[i] = std::min(wf.b[i], l[i]);
            nu[i] = std::max(m - wf.b[i], m - l[i]);
            mu[i] = l[i] - delta[i];
            out.min_value += delta[i] * delta[i];
        }
        out.delta.push_back(std::move(delta));
        out.nu.push_back(std::move(nu));
        out.mu.push_back(std::move(mu));
    }
    return out;
}

bool verify_certificates(const ProblemData& problem, const WaterfillSolution& wf) {
    if (wf.certificates.size() != wf.constants.size()) return false;
    if (wf.cuts.empty() || wf.cuts.back() != problem.dims.front()) return false;
    for (std::size_t k = 0; k < wf.certificates.size(); ++k) {
        const auto& cert = wf.certificates[k];
        if (cert.first_row != wf.cuts[k] || cert.last_row + 1 != wf.cuts[k + 1]) return false;
        RealVector mass;
        for (std::size_t i = cert.first_row; i <= cert.last_row; ++i)
            mass.push_back(waterfill_mass(row_levels(problem, i), cert.constant));
        const std::span<const double> w(problem.weights.data() + cert.first_row,
                                        cert.last_weight - cert.first_row + 1);
        if (!majorizes(w, mass)) return false;
        if (k > 0 && !(wf.constants[k] >= wf.constants[k - 1])) return false;
    }
    return std::is_sorted(wf.b.begin(), wf.b.end());
}

}  // namespace jfod
