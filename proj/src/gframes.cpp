#include "jfod/gframes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "jfod/errors.hpp"
#include "jfod/majorization.hpp"

namespace jfod {

RealVector GOperatorFamily::squared_norms() const {
    RealVector out;
    out.reserve(operators.size());
    for (const auto& t : operators) {
        const double f = t.frobenius_norm();
        out.push_back(f * f);
    }
    return out;
}

RealVector expanded_weights(std::span<const double> alpha, std::size_t analysis_dim) {
    if (analysis_dim == 0) throw DimensionMismatch("analysis dimension must be positive");
    RealVector out;
    out.reserve(alpha.size() * analysis_dim);
    for (double a : alpha) out.insert(out.end(), analysis_dim, a / static_cast<double>(analysis_dim));
    return out;
}

bool gframe_feasible(std::span<const double> spectrum, std::span<const double> alpha, std::size_t analysis_dim) {
    return majorizes(expanded_weights(alpha, analysis_dim), spectrum);
}

HermitianMatrix gframe_operator(const GOperatorFamily& family) {
    const std::size_t d = family.domain_dim;
    Matrix s(d, d);
    for (const auto& t : family.operators) {
        if (t.cols() != d || t.rows() != family.analysis_dim)
            throw DimensionMismatch("G-frame operator has the wrong shape");
        s += t.adjoint() * t;
    }
    return HermitianMatrix::hermitian_part(s);
}

GOperatorFamily lift_vector_frame(const VectorFamily& frame, std::size_t operator_count, std::size_t analysis_dim) {
    if (frame.count() != operator_count * analysis_dim)
        throw DimensionMismatch("lift: vector count must equal operators x analysis dimension");
    GOperatorFamily out;
    out.domain_dim = frame.dim();
    out.analysis_dim = analysis_dim;
    for (std::size_t i = 0; i < operator_count; ++i) {
        Matrix t(analysis_dim, frame.dim());
        for (std::size_t r = 0; r < analysis_dim; ++r) {
            const auto& f = frame[i * analysis_dim + r];
            for (std::size_t c = 0; c < frame.dim(); ++c) t(r, c) = std::conj(f[c]);
        }
        out.operators.push_back(std::move(t));
    }
    return out;
}

GFrameSolution gframe_optimize(const HermitianMatrix& a, std::span<const double> alpha, std::size_t analysis_dim) {
    if (alpha.empty()) throw InvalidWeights("at least one operator weight is required");
    for (double w : alpha)
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidWeights("operator weights must be positive");
    if (!std::is_sorted(alpha.begin(), alpha.end(), std::greater<>{}))
        throw InvalidWeights("operator weights must be non-increasing");
    if (analysis_dim == 0) throw DimensionMismatch("analysis dimension must be positive");
    if (a.dim() > alpha.size() * analysis_dim)
        throw DimensionMismatch("dimension of A exceeds operators x analysis dimension");

    GFrameSolution out;
    InitialData init = initial_data_from_operators(expanded_weights(alpha, analysis_dim), {a});
    out.reduced = init.problem;
    out.feasible = gframe_feasible(out.reduced.spectra.front(), alpha, analysis_dim);
    out.waterfill = compute_b(out.reduced);
    out.spectra = compute_optimal_spectra(out.reduced, out.waterfill);
    out.min_value = out.spectra.min_value;

    const Design design = synthesize_optimal_design(out.reduced, out.spectra, init.bases);
    out.vector_frame = design.family(0);
    out.family = lift_vector_frame(out.vector_frame, alpha.size(), analysis_dim);
    out.frame_operator = gframe_operator(out.family);

    const HermitianMatrix gap = a - out.frame_operator;
    for (double p : {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()})
        out.schatten.push_back({p, schatten_norm(gap, p)});
    return out;
}

}  // namespace jfod
