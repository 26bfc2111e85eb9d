#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "spd/feasible_set.hpp"

namespace spd {

/// All randomness in a run flows from one engine owned by the solver.
using Rng = std::mt19937_64;

/// One realization of the random variable. Problems use whichever field
/// suits them: an example index for finite-sum data, a noise vector for
/// synthetic expectations.
struct SampleToken {
    std::size_t index = 0;
    std::vector<double> noise;
};

/// The stochastic objective F(x) = E[f(x, zeta)] over a product of blocks.
///
/// Implementations are immutable after construction and may be shared between
/// threads. `draw` is only ever called by the coordinating thread; the gradient
/// oracles are called concurrently for distinct blocks.
///
/// Contract on the sampling oracle: for every x, the mean of sample gradients
/// over independent draws is the true gradient, and the sample variance is
/// bounded. Synthetic problems satisfy this by construction.
class Problem {
public:
    virtual ~Problem() = default;

    const std::vector<BlockSpec>& blocks() const noexcept { return blocks_; }
    std::size_t num_blocks() const noexcept { return blocks_.size(); }
    std::size_t dim() const noexcept { return offsets_.back(); }
    std::size_t block_offset(std::size_t block) const { return offsets_.at(block); }
    std::size_t block_dim(std::size_t block) const { return blocks_.at(block).dim(); }

    template <class T>
    std::span<T> block_view(std::span<T> joint, std::size_t block) const {
        return joint.subspan(offsets_[block], blocks_[block].dim());
    }

    virtual SampleToken draw(Rng& rng) const = 0;

    /// out += weight * grad_l f(x, token), where `out` is block `block`'s slice.
    virtual void accumulate_block_grad(const SampleToken& token, std::span<const double> x,
                                       std::size_t block, double weight,
                                       std::span<double> out) const = 0;

    virtual std::optional<double> sample_value(const SampleToken& /*token*/,
                                               std::span<const double> /*x*/) const {
        return std::nullopt;
    }

    virtual bool has_true_objective() const { return false; }
    /// Throws UnsupportedOperation unless has_true_objective().
    virtual double true_objective(std::span<const double> x) const;

    virtual bool has_true_gradient() const { return false; }
    /// Throws UnsupportedOperation unless has_true_gradient().
    virtual void true_gradient(std::span<const double> x, std::span<double> out) const;

    std::vector<double> sample_grad(const SampleToken& token, std::span<const double> x,
                                    std::size_t block) const;
    std::vector<double> true_gradient(std::span<const double> x) const;

    /// Projects every block of `x` in place.
    void project_joint(std::span<double> x) const;
    bool is_feasible(std::span<const double> x, double tol = 0.0) const;
    /// Concatenated block centroids.
    std::vector<double> default_start() const;

protected:
    explicit Problem(std::vector<BlockSpec> blocks);

private:
    std::vector<BlockSpec> blocks_;
    std::vector<std::size_t> offsets_;
};

/// Splits `dim` coordinates into `parts` contiguous ranges whose sizes differ
/// by at most one (the larger ones first). Returns the range sizes.
std::vector<std::size_t> even_partition(std::size_t dim, std::size_t parts);

}  // namespace spd
