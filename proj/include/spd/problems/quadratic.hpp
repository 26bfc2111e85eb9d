#pragma once

#include <vector>

#include "spd/problem.hpp"

namespace spd {

struct QuadraticSpec {
    /// mu: the mean of the random target.
    std::vector<double> target;
    /// Positive diagonal curvature c.
    std::vector<double> curvature;
    double noise_stddev = 0.0;
    /// Must cover target.size() coordinates.
    std::vector<BlockSpec> blocks;
};

/// f(x, zeta) = 1/2 sum_j c_j (x_j - zeta_j)^2 with zeta ~ mu + sigma * N(0, I).
///
/// F(x) = 1/2 sum_j c_j (x_j - mu_j)^2 + sigma^2/2 sum_j c_j and
/// grad F(x) = c * (x - mu), both exact. The sample gradient c * (x - zeta) is
/// unbiased with variance sigma^2 * c_j^2 per coordinate.
class QuadraticProblem final : public Problem {
public:
    explicit QuadraticProblem(QuadraticSpec spec);

    SampleToken draw(Rng& rng) const override;
    void accumulate_block_grad(const SampleToken& token, std::span<const double> x, std::size_t block,
                               double weight, std::span<double> out) const override;
    std::optional<double> sample_value(const SampleToken& token, std::span<const double> x) const override;

    bool has_true_objective() const override { return true; }
    double true_objective(std::span<const double> x) const override;
    bool has_true_gradient() const override { return true; }
    void true_gradient(std::span<const double> x, std::span<double> out) const override;
    using Problem::true_gradient;

    /// The constrained minimizer. Separable per coordinate on boxes; on a ball
    /// it is the projection of mu when the block's curvature is isotropic, and
    /// otherwise found by bisection on the ball constraint's multiplier.
    std::vector<double> optimum() const;
    double optimal_value() const;

    const QuadraticSpec& spec() const noexcept { return spec_; }

private:
    QuadraticSpec spec_;
};

QuadraticProblem make_quadratic(QuadraticSpec spec);

/// The 10-dimensional verification problem: unit curvature, sigma = 1,
/// mu evenly spaced on [-1, 1], two blocks of five. With `boxed` every block
/// is confined to [-0.5, 0.5]^5, which clamps the four outermost targets.
QuadraticProblem make_quad_d10(bool boxed = false, std::size_t num_blocks = 2);

}  // namespace spd
