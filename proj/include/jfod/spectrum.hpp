#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jfod/linalg.hpp"

namespace jfod {

// Weights alpha (length n), dimension profile d (length m) and the
// non-increasing spectra lambda_j of the initial frame operators.
struct ProblemData {
    RealVector weights;
    std::vector<std::size_t> dims;
    std::vector<RealVector> spectra;

    std::size_t vector_count() const { return weights.size(); }
    std::size_t space_count() const { return dims.size(); }

    // Throws InvalidProblem naming the first violated invariant.
    void validate() const;

    // max_j lambda_{1,j}, the operator norm bound used for translation.
    double max_eigenvalue() const;
};

// ProblemData plus the eigenbases and operators it was derived from.
struct InitialData {
    ProblemData problem;
    std::vector<HermitianMatrix> operators;
    std::vector<Matrix> bases;  // column i of bases[j] belongs to spectra[j][i]
};

// Eigen-decomposes every operator. Eigenvalues in [-1e-10 * scale, 0) are
// clamped to zero; anything more negative is rejected as InvalidProblem.
InitialData initial_data_from_operators(RealVector weights, std::vector<HermitianMatrix> operators);
InitialData initial_data_from_families(RealVector weights, std::span<const VectorFamily> families);

// Diagonal operators and identity bases for directly supplied spectra.
InitialData initial_data_from_spectra(ProblemData problem);

// Evidence for one accepted block: rows [first_row, last_row] (0-based,
// inclusive) with weights [first_row, last_weight].
struct BlockCertificate {
    std::size_t first_row = 0;
    std::size_t last_row = 0;
    std::size_t last_weight = 0;
    double constant = 0.0;
    RealVector row_mass;  // sum_j (lambda_{i,j} - constant)^+ per row
    bool majorized = false;
    bool final_block = false;
};

struct WaterfillSolution {
    RealVector constants;            // b_1 < ... < b_p
    std::vector<std::size_t> sizes;  // s_k
    std::vector<std::size_t> cuts;   // 0 = i_0 < ... < i_p = d_1
    RealVector b;                    // constants expanded by sizes, length d_1
    std::vector<BlockCertificate> certificates;
    std::size_t candidates_tested = 0;
};

struct OptimalSpectra {
    std::vector<RealVector> delta;  // min((b)_{d_j}, lambda_j)
    std::vector<RealVector> nu;     // max((c)_{d_j}, M - lambda_j) with c = M - b
    std::vector<RealVector> mu;     // lambda_j - delta_j
    double translation = 0.0;       // M used for nu
    double min_value = 0.0;         // sum_j ||delta_j||^2
};

// Levels lambda_{i,j} of row i over the spaces with i < d_j.
RealVector row_levels(const ProblemData& problem, std::size_t row);

// Block-by-block construction of b. Throws InvalidProblem or
// InternalContradiction.
WaterfillSolution compute_b(const ProblemData& problem);

OptimalSpectra compute_optimal_spectra(const ProblemData& problem, const WaterfillSolution& wf);

// Re-checks every block certificate against the problem data.
bool verify_certificates(const ProblemData& problem, const WaterfillSolution& wf);

}  // namespace jfod
