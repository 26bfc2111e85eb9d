#include "spd/problems/nonconvex.hpp"

#include <cmath>

#include "spd/error.hpp"
#include "spd/vector_ops.hpp"

namespace spd {

namespace {

std::vector<BlockSpec> toy_blocks() { return {BlockSpec::box(1, -2.0, 2.0), BlockSpec::box(1, -2.0, 2.0)}; }

double partial(std::span<const double> x, std::size_t j) {
    return j == 0 ? 4.0 * x[0] * (x[0] * x[0] - 1.0) : 2.0 * x[1];
}

}  // namespace

NonconvexToy::NonconvexToy(double noise_stddev) : Problem(toy_blocks()), sigma_(noise_stddev) {
    if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) throw InvalidArgument("nonconvex toy: noise stddev must be >= 0");
}

SampleToken NonconvexToy::draw(Rng& rng) const {
    SampleToken token;
    token.noise.assign(2, 0.0);
    if (sigma_ > 0.0) {
        std::normal_distribution<double> normal(0.0, sigma_);
        for (double& z : token.noise) z = normal(rng);
    }
    return token;
}

void NonconvexToy::accumulate_block_grad(const SampleToken& token, std::span<const double> x, std::size_t block,
                                         double weight, std::span<double> out) const {
    require_same_size(out.size(), 1, "nonconvex toy block gradient");
    out[0] += weight * (partial(x, block) + token.noise[block]);
}

std::optional<double> NonconvexToy::sample_value(const SampleToken& token, std::span<const double> x) const {
    return true_objective(x) + dot(token.noise, x);
}

double NonconvexToy::true_objective(std::span<const double> x) const {
    require_same_size(x.size(), 2, "nonconvex toy objective");
    const double a = x[0] * x[0] - 1.0;
    return a * a + x[1] * x[1];
}

void NonconvexToy::true_gradient(std::span<const double> x, std::span<double> out) const {
    require_same_size(x.size(), 2, "nonconvex toy gradient");
    require_same_size(out.size(), 2, "nonconvex toy gradient output");
    out[0] = partial(x, 0);
    out[1] = partial(x, 1);
}

NonconvexToy make_nonconvex_toy(double noise_stddev) { return NonconvexToy(noise_stddev); }

}  // namespace spd
