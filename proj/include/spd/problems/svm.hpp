#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spd/problem.hpp"

namespace spd {

/// Strictly increasing 0-based indices, no explicit zeros.
struct SparseVector {
    std::vector<std::uint32_t> indices;
    std::vector<double> values;

    std::size_t nnz() const noexcept { return indices.size(); }
    double dot(std::span<const double> w) const;

    friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

struct SparseExample {
    SparseVector features;
    int label = 1;  // -1 or +1

    friend bool operator==(const SparseExample&, const SparseExample&) = default;
};

struct SvmDataset {
    std::vector<SparseExample> examples;
    std::size_t num_features = 0;
    std::string name;

    /// Throws InvalidArgument on an empty set, a bad label, an out-of-range or
    /// non-increasing index, or a stored zero.
    void validate() const;
    std::size_t size() const noexcept { return examples.size(); }
    std::size_t nnz() const noexcept;
    /// Percentage of non-zero entries in the m x n design matrix.
    double density_percent() const;

    friend bool operator==(const SvmDataset&, const SvmDataset&) = default;
};

/// The sample subgradient lambda * w - y * x * 1(y <x, w> <= 1), kept in
/// factored form: reg_scale * w + hinge_coef * x.
struct HingeSubgradient {
    double reg_scale = 0.0;
    double hinge_coef = 0.0;
};

/// At the kink y<x, w> = 1 the hinge side is taken (a valid subgradient).
HingeSubgradient svm_sample_grad(std::span<const double> w, const SparseExample& ex, double lambda);
std::vector<double> to_dense(const HingeSubgradient& g, std::span<const double> w, const SparseExample& ex);

/// (lambda/2)|w|^2 + mean_i max(0, 1 - y_i <x_i, w>).
double svm_objective(std::span<const double> w, const SvmDataset& ds, double lambda);

/// Fraction of examples with sign(<x, w>) == y. <x, w> = 0 counts as wrong.
double svm_accuracy(std::span<const double> w, const SvmDataset& ds);

/// Table-1 regularization for the named benchmark sets; nullopt otherwise.
std::optional<double> default_lambda(std::string_view dataset_name);

/// The linear SVM as a stochastic problem: one token is one example index
/// drawn uniformly with replacement. The weight vector is split into
/// `num_blocks` contiguous, unconstrained feature ranges.
class SvmProblem final : public Problem {
public:
    SvmProblem(SvmDataset dataset, double lambda, std::size_t num_blocks = 1);

    SampleToken draw(Rng& rng) const override;
    void accumulate_block_grad(const SampleToken& token, std::span<const double> x, std::size_t block,
                               double weight, std::span<double> out) const override;
    std::optional<double> sample_value(const SampleToken& token, std::span<const double> x) const override;

    bool has_true_objective() const override { return true; }
    /// The empirical (SAA) objective over the whole training set.
    double true_objective(std::span<const double> x) const override;
    bool has_true_gradient() const override { return true; }
    void true_gradient(std::span<const double> x, std::span<double> out) const override;
    using Problem::true_gradient;

    const SvmDataset& dataset() const noexcept { return dataset_; }
    double lambda() const noexcept { return lambda_; }

private:
    SvmDataset dataset_;
    double lambda_;
};

/// m examples in [-1, 1]^n labelled by a planted unit-norm w*; points with
/// |<w*, x>| < margin are rejected, so the set is separable through the
/// origin with geometric margin >= margin. Deterministic per seed.
SvmDataset make_separable_svm(std::size_t m, std::size_t n, double margin, std::uint64_t seed);

}  // namespace spd
