#pragma once

#include <span>
#include <vector>

#include "jfod/linalg.hpp"
#include "jfod/spectrum.hpp"
#include "jfod/synthesis.hpp"

namespace jfod {

// Operators T_i : C^d -> C^n, stored as n x d matrices.
struct GOperatorFamily {
    std::size_t domain_dim = 0;
    std::size_t analysis_dim = 0;
    std::vector<Matrix> operators;

    // ||T_i||_F^2 per operator.
    RealVector squared_norms() const;
};

// (alpha_1/n 1_n, ..., alpha_m/n 1_n)
RealVector expanded_weights(std::span<const double> alpha, std::size_t analysis_dim);

// Whether some family with ||T_i||_F^2 = alpha_i has frame operator with
// the given (non-increasing) spectrum.
bool gframe_feasible(std::span<const double> spectrum, std::span<const double> alpha, std::size_t analysis_dim);

// sum_i T_i^* T_i
HermitianMatrix gframe_operator(const GOperatorFamily& family);

// T_i = W_i T where T^* has the vector frame as columns and W_i selects the
// rows (i-1)n+1 .. in in the standard basis.
GOperatorFamily lift_vector_frame(const VectorFamily& frame, std::size_t operator_count, std::size_t analysis_dim);

struct SchattenReport {
    double p;  // infinity for the operator norm
    double value;
};

struct GFrameSolution {
    double min_value = 0.0;
    bool feasible = false;
    GOperatorFamily family;
    VectorFamily vector_frame;
    HermitianMatrix frame_operator;
    ProblemData reduced;  // the equivalent single-space vector problem
    WaterfillSolution waterfill;
    OptimalSpectra spectra;
    std::vector<SchattenReport> schatten;  // p in {1, 2, 4, inf}
};

// min ||A - S_F||_F over families with ||T_i||_F^2 = alpha_i. Throws
// DimensionMismatch (d > m n, n = 0) or InvalidWeights.
GFrameSolution gframe_optimize(const HermitianMatrix& a, std::span<const double> alpha, std::size_t analysis_dim);

}  // namespace jfod
