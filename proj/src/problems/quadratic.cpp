#include "spd/problems/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "spd/error.hpp"
#include "spd/vector_ops.hpp"

namespace spd {

namespace {

const std::vector<BlockSpec>& checked_blocks(const QuadraticSpec& spec) {
    const std::size_t d = spec.target.size();
    if (d == 0) throw InvalidArgument("quadratic: dimension must be positive");
    require_same_size(spec.curvature.size(), d, "quadratic curvature");
    for (double c : spec.curvature)
        if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("quadratic: curvature must be strictly positive");
    if (!all_finite(spec.target)) throw InvalidArgument("quadratic: target must be finite");
    if (!(spec.noise_stddev >= 0.0) || !std::isfinite(spec.noise_stddev))
        throw InvalidArgument("quadratic: noise stddev must be non-negative");
    std::size_t covered = 0;
    for (const auto& b : spec.blocks) covered += b.dim();
    require_same_size(covered, d, "quadratic blocks");
    return spec.blocks;
}

// Minimizer of 1/2 sum c_i (x_i - mu_i)^2 over |x - center| <= r.
std::vector<double> ball_minimizer(std::span<const double> mu, std::span<const double> c, const L2Ball& ball) {
    const std::size_t n = mu.size();
    if (distance(mu, ball.center) <= ball.radius) return {mu.begin(), mu.end()};
    const bool isotropic = std::all_of(c.begin(), c.end(), [&](double v) { return v == c[0]; });
    if (isotropic) return project(FeasibleSet(ball), mu);

    // KKT: x_i(nu) = (c_i mu_i + nu center_i) / (c_i + nu), |x(nu) - center| is
    // decreasing in nu >= 0; find the nu that lands on the sphere.
    auto point = [&](double nu) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = (c[i] * mu[i] + nu * ball.center[i]) / (c[i] + nu);
        return x;
    };
    double lo = 0.0, hi = 1.0;
    while (distance(point(hi), ball.center) > ball.radius) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (distance(point(mid), ball.center) > ball.radius)
            lo = mid;
        else
            hi = mid;
    }
    return project(FeasibleSet(ball), point(hi));
}

}  // namespace

QuadraticProblem::QuadraticProblem(QuadraticSpec spec) : Problem(checked_blocks(spec)), spec_(std::move(spec)) {}

SampleToken QuadraticProblem::draw(Rng& rng) const {
    SampleToken token;
    token.noise = spec_.target;
    if (spec_.noise_stddev > 0.0) {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (double& z : token.noise) z += spec_.noise_stddev * normal(rng);
    }
    return token;
}

void QuadraticProblem::accumulate_block_grad(const SampleToken& token, std::span<const double> x,
                                             std::size_t block, double weight, std::span<double> out) const {
    const std::size_t off = block_offset(block);
    require_same_size(out.size(), block_dim(block), "quadratic block gradient");
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t j = off + i;
        out[i] += weight * spec_.curvature[j] * (x[j] - token.noise[j]);
    }
}

std::optional<double> QuadraticProblem::sample_value(const SampleToken& token, std::span<const double> x) const {
    double v = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double d = x[j] - token.noise[j];
        v += spec_.curvature[j] * d * d;
    }
    return 0.5 * v;
}

double QuadraticProblem::true_objective(std::span<const double> x) const {
    require_same_size(x.size(), dim(), "quadratic objective");
    double v = 0.0, noise = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double d = x[j] - spec_.target[j];
        v += spec_.curvature[j] * d * d;
        noise += spec_.curvature[j];
    }
    const double s2 = spec_.noise_stddev * spec_.noise_stddev;
    return 0.5 * v + 0.5 * s2 * noise;
}

void QuadraticProblem::true_gradient(std::span<const double> x, std::span<double> out) const {
    require_same_size(x.size(), dim(), "quadratic gradient");
    require_same_size(out.size(), dim(), "quadratic gradient output");
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = spec_.curvature[j] * (x[j] - spec_.target[j]);
}

std::vector<double> QuadraticProblem::optimum() const {
    std::vector<double> x(dim());
    for (std::size_t l = 0; l < num_blocks(); ++l) {
        const std::size_t off = block_offset(l);
        const std::size_t n = block_dim(l);
        const std::span<const double> mu(spec_.target.data() + off, n);
        const std::span<const double> c(spec_.curvature.data() + off, n);
        std::vector<double> xl;
        if (const auto* ball = std::get_if<L2Ball>(&blocks()[l].set()))
            xl = ball_minimizer(mu, c, *ball);
        else
            xl = project(blocks()[l].set(), mu);  // separable: clamp per coordinate
        std::copy(xl.begin(), xl.end(), x.begin() + static_cast<std::ptrdiff_t>(off));
    }
    return x;
}

double QuadraticProblem::optimal_value() const { return true_objective(optimum()); }

QuadraticProblem make_quadratic(QuadraticSpec spec) { return QuadraticProblem(std::move(spec)); }

QuadraticProblem make_quad_d10(bool boxed, std::size_t num_blocks) {
    constexpr std::size_t d = 10;
    QuadraticSpec spec;
    spec.target.resize(d);
    for (std::size_t j = 0; j < d; ++j) spec.target[j] = -1.0 + 2.0 * static_cast<double>(j) / (d - 1);
    spec.curvature.assign(d, 1.0);
    spec.noise_stddev = 1.0;
    for (std::size_t size : even_partition(d, num_blocks))
        spec.blocks.push_back(boxed ? BlockSpec::box(size, -0.5, 0.5) : BlockSpec::unconstrained(size));
    return QuadraticProblem(std::move(spec));
}

}  // namespace spd
