#pragma once

#include "spd/problem.hpp"

namespace spd {

/// f(x, zeta) = (x1^2 - 1)^2 + x2^2 + <zeta, x> on [-2, 2]^2, zeta ~ N(0, sigma^2 I).
///
/// F has stationary points at x1 in {-1, 0, 1}, x2 = 0: minima at x1 = +-1 and
/// a saddle at the origin. Each coordinate is its own block.
class NonconvexToy final : public Problem {
public:
    explicit NonconvexToy(double noise_stddev = 1.0);

    SampleToken draw(Rng& rng) const override;
    void accumulate_block_grad(const SampleToken& token, std::span<const double> x, std::size_t block,
                               double weight, std::span<double> out) const override;
    std::optional<double> sample_value(const SampleToken& token, std::span<const double> x) const override;

    bool has_true_objective() const override { return true; }
    double true_objective(std::span<const double> x) const override;
    bool has_true_gradient() const override { return true; }
    void true_gradient(std::span<const double> x, std::span<double> out) const override;
    using Problem::true_gradient;

    double noise_stddev() const noexcept { return sigma_; }

private:
    double sigma_;
};

NonconvexToy make_nonconvex_toy(double noise_stddev = 1.0);

}  // namespace spd
