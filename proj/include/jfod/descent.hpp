#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jfod/linalg.hpp"
#include "jfod/synthesis.hpp"

namespace jfod {

struct DescentConfig {
    std::size_t max_iters = 100000;
    double step_init = 1e-2;
    double armijo_shrink = 0.5;
    double sufficient_decrease = 1e-4;
    double grad_tol = 1e-8;  // relative to 1 + |objective|
    std::uint64_t seed = 0;

    void validate() const;
};

struct DescentTrace {
    std::vector<double> iterates;  // objective per accepted iterate, starting point first
    Design final_design;
    bool converged = false;  // gradient tolerance met
    bool stalled = false;    // stopped at the floating-point resolution of the objective
    double grad_norm = 0.0;
};

// sum_j ||S_j^0 - S_{F_j}||_F^2
double theta(std::span<const HermitianMatrix> targets, const Design& design);

// theta(to) - theta(from), accurate to the size of the change.
double theta_difference(std::span<const HermitianMatrix> targets, const Design& from, const Design& to);

// Euclidean gradient over the real and imaginary parts of every vector,
// packed as complex numbers: -4 (S_j^0 - S_{F_j}) f_{i,j}.
Design grad_theta(std::span<const HermitianMatrix> targets, const Design& design);

// Removes from each concatenated direction (d_{i,1}, ..., d_{i,m}) its
// radial component along (f_{i,1}, ..., f_{i,m}).
Design project_tangent(const Design& design, const Design& direction);

// design + step * tangent(direction), each concatenated vector rescaled to
// squared norm weights[i]. Throws DegenerateVector.
Design project_and_retract(const Design& design, const Design& direction, double step,
                           std::span<const double> weights);

// Uniform on each joint sphere via normalised complex Gaussians.
Design random_design(std::span<const double> weights, std::span<const std::size_t> dims, std::uint64_t seed);

// Riemannian gradient descent with Armijo backtracking. Stops at the
// gradient tolerance, at max_iters, or when 200 consecutive iterations gain
// less than 1e-13 (1 + |objective|). Recorded objective values never increase.
DescentTrace descend(std::span<const HermitianMatrix> targets, std::span<const double> weights, Design start,
                     const DescentConfig& config);

}  // namespace jfod
