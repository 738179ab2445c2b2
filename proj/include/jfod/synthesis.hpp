#pragma once

#include <span>
#include <vector>

#include "jfod/linalg.hpp"
#include "jfod/spectrum.hpp"

namespace jfod {

// An m-tuple of families, family j in C^{d_j}, all with n vectors.
class Design {
public:
    Design() = default;
    explicit Design(std::vector<VectorFamily> families);

    std::size_t space_count() const { return families_.size(); }
    std::size_t vector_count() const { return families_.empty() ? 0 : families_.front().count(); }
    const VectorFamily& family(std::size_t j) const { return families_[j]; }
    VectorFamily& family(std::size_t j) { return families_[j]; }
    const std::vector<VectorFamily>& families() const { return families_; }

    // sum_j ||f_{i,j}||^2 per index i.
    RealVector joint_norms() const;
    // max_i |joint_norms_i - weights_i| / weights_i
    double joint_norm_residual(std::span<const double> weights) const;
    std::vector<HermitianMatrix> frame_operators() const;

private:
    std::vector<VectorFamily> families_;
};

// Prescribed diagonal and spectrum of an n x n Hermitian matrix.
struct GramTarget {
    RealVector diagonal;
    RealVector spectrum;

    // diagonal ≺ spectrum, spectrum >= 0, equal sizes.
    void validate() const;
};

// G = rotation * diag(spectrum) * rotation^T with diag(G) = diagonal.
struct SchurHornConstruction {
    HermitianMatrix matrix;
    Matrix rotation;  // real orthogonal; column k belongs to spectrum[k]
};

// Givens chain: starting from diag(spectrum), each plane rotation moves the
// diagonal one T-transform step towards the target, fixing one entry.
// Both vectors may be in any order. Throws MajorizationViolated.
SchurHornConstruction schur_horn_construct(std::span<const double> diagonal, std::span<const double> spectrum);

HermitianMatrix hermitian_with_diag_and_spectrum(const GramTarget& target);

// n = norms.size() vectors in C^d with frame operator s and the given
// squared norms. Requires norms ≺ lambda(s) in the extended sense.
VectorFamily frame_with_operator_and_norms(const HermitianMatrix& s, std::span<const double> norms);

// Splits weights (non-increasing) into one non-negative vector per profile
// so that split[j] ≺ profiles[j] and sum_j split[j] = weights. Profiles must
// share the weights' length and be non-increasing. The split is D profiles[j]
// for a single doubly stochastic D built from T-transforms taking
// sum_j profiles[j] to weights. Throws MajorizationViolated when
// weights ⊀ sum_j profiles[j].
std::vector<RealVector> split_weights(std::span<const double> weights, std::span<const RealVector> profiles);

// Optimal (alpha, d)-design with S_{F_j} = V_j diag(mu_j) V_j^*.
// bases may be empty (identity bases).
Design synthesize_optimal_design(const ProblemData& problem, const OptimalSpectra& spectra,
                                 std::span<const Matrix> bases = {});

}  // namespace jfod
