#include "jfod/descent.hpp"

#include <cmath>
#include <random>
#include <string>

#include "jfod/errors.hpp"

namespace jfod {

void DescentConfig::validate() const {
    if (max_iters == 0) throw InvalidInput("descent: max_iters must be positive");
    if (!(step_init > 0.0)) throw InvalidInput("descent: step_init must be positive");
    if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0)) throw InvalidInput("descent: armijo_shrink must lie in (0, 1)");
    if (!(sufficient_decrease > 0.0 && sufficient_decrease < 1.0))
        throw InvalidInput("descent: sufficient_decrease must lie in (0, 1)");
    if (!(grad_tol > 0.0)) throw InvalidInput("descent: grad_tol must be positive");
}

namespace {

void check_shapes(std::span<const HermitianMatrix> targets, const Design& design) {
    if (targets.size() != design.space_count()) throw DimensionMismatch("design and targets differ in space count");
    for (std::size_t j = 0; j < targets.size(); ++j)
        if (targets[j].dim() != design.family(j).dim())
            throw DimensionMismatch("design family " + std::to_string(j) + " has the wrong dimension");
}

double inner_real(const Design& a, const Design& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.space_count(); ++j)
        for (std::size_t i = 0; i < a.vector_count(); ++i)
            for (std::size_t r = 0; r < a.family(j).dim(); ++r)
                acc += std::real(std::conj(a.family(j)[i][r]) * b.family(j)[i][r]);
    return acc;
}

}  // namespace

double theta(std::span<const HermitianMatrix> targets, const Design& design) {
    check_shapes(targets, design);
    const auto ops = design.frame_operators();
    return jfod_squared(targets, ops);
}

double theta_difference(std::span<const HermitianMatrix> targets, const Design& from, const Design& to) {
    check_shapes(targets, from);
    check_shapes(targets, to);
    double total = 0.0;
    for (std::size_t j = 0; j < targets.size(); ++j) {
        const auto& x = from.family(j);
        const auto& y = to.family(j);
        const std::size_t d = x.dim();
        // S_y - S_x = sum_i (y_i - x_i) y_i^* + x_i (y_i - x_i)^*, formed from
        // the increments so that small changes keep full relative accuracy.
        Matrix change(d, d);
        for (std::size_t i = 0; i < x.count(); ++i)
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) {
                    const Complex dr = y[i][r] - x[i][r];
                    const Complex dc = y[i][c] - x[i][c];
                    change(r, c) += dr * std::conj(y[i][c]) + x[i][r] * std::conj(dc);
                }
        // ||E - C||^2 - ||E||^2 = <C, C - 2E> with E = S^0 - S_x.
        const Matrix residual = targets[j].matrix() - frame_operator(x).matrix();
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                total += std::real(std::conj(change(r, c)) * (change(r, c) - 2.0 * residual(r, c)));
    }
    return total;
}

Design grad_theta(std::span<const HermitianMatrix> targets, const Design& design) {
    check_shapes(targets, design);
    std::vector<VectorFamily> grads;
    for (std::size_t j = 0; j < targets.size(); ++j) {
        const auto& fam = design.family(j);
        const Matrix residual = targets[j].matrix() - frame_operator(fam).matrix();
        std::vector<ComplexVector> g;
        g.reserve(fam.count());
        for (const auto& f : fam.vectors()) {
            ComplexVector v = residual.apply(f);
            for (auto& z : v) z *= -4.0;
            g.push_back(std::move(v));
        }
        grads.emplace_back(fam.dim(), std::move(g));
    }
    return Design(std::move(grads));
}

Design project_tangent(const Design& design, const Design& direction) {
    const std::size_t n = design.vector_count();
    const std::size_t m = design.space_count();
    if (direction.space_count() != m || direction.vector_count() != n)
        throw DimensionMismatch("direction does not match the design shape");
    Design out = direction;
    for (std::size_t i = 0; i < n; ++i) {
        double radial = 0.0;
        double norm2 = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const auto& f = design.family(j)[i];
            const auto& v = direction.family(j)[i];
            for (std::size_t r = 0; r < f.size(); ++r) radial += std::real(std::conj(f[r]) * v[r]);
            norm2 += squared_norm(f);
        }
        if (norm2 == 0.0) continue;
        const double coeff = radial / norm2;
        for (std::size_t j = 0; j < m; ++j) {
            const auto& f = design.family(j)[i];
            auto& v = out.family(j)[i];
            for (std::size_t r = 0; r < f.size(); ++r) v[r] -= coeff * f[r];
        }
    }
    return out;
}

Design project_and_retract(const Design& design, const Design& direction, double step,
                           std::span<const double> weights) {
    const std::size_t n = design.vector_count();
    if (weights.size() != n) throw DimensionMismatch("retraction: weight count differs from vector count");
    const Design tangent = project_tangent(design, direction);
    Design out = design;
    for (std::size_t i = 0; i < n; ++i) {
        double norm2 = 0.0;
        for (std::size_t j = 0; j < design.space_count(); ++j) {
            auto& f = out.family(j)[i];
            const auto& v = tangent.family(j)[i];
            for (std::size_t r = 0; r < f.size(); ++r) f[r] += step * v[r];
            norm2 += squared_norm(f);
        }
        if (!(norm2 > 1e-300) || !std::isfinite(norm2))
            throw DegenerateVector("retraction: joint vector " + std::to_string(i) + " vanished");
        const double scale = std::sqrt(weights[i] / norm2);
        for (std::size_t j = 0; j < design.space_count(); ++j)
            for (auto& z : out.family(j)[i]) z *= scale;
    }
    return out;
}

Design random_design(std::span<const double> weights, std::span<const std::size_t> dims, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = weights.size();
    std::vector<std::vector<ComplexVector>> raw(dims.size(), std::vector<ComplexVector>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double norm2 = 0.0;
        for (std::size_t j = 0; j < dims.size(); ++j) {
            raw[j][i].resize(dims[j]);
            for (auto& z : raw[j][i]) {
                const double re = normal(rng);
                const double im = normal(rng);
                z = Complex(re, im);
                norm2 += re * re + im * im;
            }
        }
        const double scale = std::sqrt(weights[i] / norm2);
        for (std::size_t j = 0; j < dims.size(); ++j)
            for (auto& z : raw[j][i]) z *= scale;
    }
    std::vector<VectorFamily> families;
    for (std::size_t j = 0; j < dims.size(); ++j) families.emplace_back(dims[j], std::move(raw[j]));
    return Design(std::move(families));
}

DescentTrace descend(std::span<const HermitianMatrix> targets, std::span<const double> weights, Design start,
                     const DescentConfig& config) {
    config.validate();
    DescentTrace trace;
    Design x = std::move(start);
    double fx = theta(targets, x);
    trace.iterates.push_back(fx);

    // Near a minimiser the objective is only resolved to roughly
    // |euclidean gradient| * ulp(f); progress below that is noise.
    constexpr std::size_t kStallWindow = 200;
    double window_start = fx;
    double trial = config.step_init;
    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        const Design g = project_tangent(x, grad_theta(targets, x));
        const double g2 = inner_real(g, g);
        trace.grad_norm = std::sqrt(g2);
        if (trace.grad_norm <= config.grad_tol * (1.0 + std::abs(fx))) {
            trace.converged = true;
            break;
        }

        bool accepted = false;
        double step = trial;
        while (step > 1e-30) {
            Design candidate = project_and_retract(x, g, -step, weights);
            const double change = theta_difference(targets, x, candidate);
            if (change <= -config.sufficient_decrease * step * g2) {
                const double fc = theta(targets, candidate);
                if (fc <= fx) {
                    x = std::move(candidate);
                    fx = fc;
                    accepted = true;
                }
                break;
            }
            step *= config.armijo_shrink;
        }
        if (!accepted) {
            trace.stalled = true;
            break;
        }
        trace.iterates.push_back(fx);
        trial = step / config.armijo_shrink;

        if ((iter + 1) % kStallWindow == 0) {
            if (window_start - fx <= 1e-13 * (1.0 + std::abs(fx))) {
                trace.stalled = true;
                break;
            }
            window_start = fx;
        }
    }
    trace.final_design = std::move(x);
    return trace;
}

}  // namespace jfod
