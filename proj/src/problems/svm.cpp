#include "spd/problems/svm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "spd/error.hpp"
#include "spd/vector_ops.hpp"

namespace spd {

double SparseVector::dot(std::span<const double> w) const {
    double s = 0.0;
    for (std::size_t i = 0; i < indices.size(); ++i) s += values[i] * w[indices[i]];
    return s;
}

void SvmDataset::validate() const {
    if (examples.empty()) throw InvalidArgument("dataset has no examples");
    if (num_features == 0) throw InvalidArgument("dataset has no features");
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const auto& ex = examples[i];
        if (ex.label != 1 && ex.label != -1)
            throw InvalidArgument("example " + std::to_string(i) + ": label must be -1 or +1");
        const auto& f = ex.features;
        require_same_size(f.indices.size(), f.values.size(), "sparse vector");
        for (std::size_t j = 0; j < f.indices.size(); ++j) {
            if (f.indices[j] >= num_features)
                throw InvalidArgument("example " + std::to_string(i) + ": feature index out of range");
            if (j > 0 && f.indices[j] <= f.indices[j - 1])
                throw InvalidArgument("example " + std::to_string(i) + ": indices not strictly increasing");
            if (f.values[j] == 0.0) throw InvalidArgument("example " + std::to_string(i) + ": explicit zero stored");
        }
    }
}

std::size_t SvmDataset::nnz() const noexcept {
    std::size_t n = 0;
    for (const auto& ex : examples) n += ex.features.nnz();
    return n;
}

double SvmDataset::density_percent() const {
    if (examples.empty() || num_features == 0) return 0.0;
    return 100.0 * static_cast<double>(nnz()) /
           (static_cast<double>(examples.size()) * static_cast<double>(num_features));
}

HingeSubgradient svm_sample_grad(std::span<const double> w, const SparseExample& ex, double lambda) {
    const double margin = ex.label * ex.features.dot(w);
    return {lambda, margin <= 1.0 ? -static_cast<double>(ex.label) : 0.0};
}

std::vector<double> to_dense(const HingeSubgradient& g, std::span<const double> w, const SparseExample& ex) {
    std::vector<double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = g.reg_scale * w[i];
    if (g.hinge_coef != 0.0) {
        const auto& f = ex.features;
        for (std::size_t j = 0; j < f.nnz(); ++j) out[f.indices[j]] += g.hinge_coef * f.values[j];
    }
    return out;
}

double svm_objective(std::span<const double> w, const SvmDataset& ds, double lambda) {
    require_same_size(w.size(), ds.num_features, "svm_objective");
    double hinge = 0.0;
    for (const auto& ex : ds.examples) hinge += std::max(0.0, 1.0 - ex.label * ex.features.dot(w));
    return 0.5 * lambda * squared_norm(w) + hinge / static_cast<double>(ds.examples.size());
}

double svm_accuracy(std::span<const double> w, const SvmDataset& ds) {
    require_same_size(w.size(), ds.num_features, "svm_accuracy");
    if (ds.examples.empty()) return 0.0;
    std::size_t correct = 0;
    for (const auto& ex : ds.examples)
        if (ex.label * ex.features.dot(w) > 0.0) ++correct;
    return static_cast<double>(correct) / static_cast<double>(ds.examples.size());
}

std::optional<double> default_lambda(std::string_view dataset_name) {
    std::string lower(dataset_name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower.find("cov") != std::string::npos) return 1e-6;
    if (lower.find("rcv1") != std::string::npos) return 1e-4;
    return std::nullopt;
}

namespace {

std::vector<BlockSpec> svm_blocks(const SvmDataset& ds, std::size_t num_blocks) {
    ds.validate();
    std::vector<BlockSpec> blocks;
    for (std::size_t size : even_partition(ds.num_features, num_blocks))
        blocks.push_back(BlockSpec::unconstrained(size));
    return blocks;
}

}  // namespace

SvmProblem::SvmProblem(SvmDataset dataset, double lambda, std::size_t num_blocks)
    : Problem(svm_blocks(dataset, num_blocks)), dataset_(std::move(dataset)), lambda_(lambda) {
    if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) throw InvalidArgument("svm: lambda must be positive");
}

SampleToken SvmProblem::draw(Rng& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, dataset_.examples.size() - 1);
    SampleToken token;
    token.index = pick(rng);
    return token;
}

void SvmProblem::accumulate_block_grad(const SampleToken& token, std::span<const double> x, std::size_t block,
                                       double weight, std::span<double> out) const {
    const auto& ex = dataset_.examples.at(token.index);
    const std::size_t begin = block_offset(block);
    const std::size_t end = begin + block_dim(block);
    require_same_size(out.size(), end - begin, "svm block gradient");

    const double reg = weight * lambda_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += reg * x[begin + i];

    const auto g = svm_sample_grad(x, ex, lambda_);
    if (g.hinge_coef == 0.0) return;
    const auto& idx = ex.features.indices;
    auto it = std::lower_bound(idx.begin(), idx.end(), static_cast<std::uint32_t>(begin));
    for (; it != idx.end() && *it < end; ++it) {
        const auto j = static_cast<std::size_t>(it - idx.begin());
        out[*it - begin] += weight * g.hinge_coef * ex.features.values[j];
    }
}

std::optional<double> SvmProblem::sample_value(const SampleToken& token, std::span<const double> x) const {
    const auto& ex = dataset_.examples.at(token.index);
    return 0.5 * lambda_ * squared_norm(x) + std::max(0.0, 1.0 - ex.label * ex.features.dot(x));
}

double SvmProblem::true_objective(std::span<const double> x) const { return svm_objective(x, dataset_, lambda_); }

void SvmProblem::true_gradient(std::span<const double> x, std::span<double> out) const {
    require_same_size(x.size(), dim(), "svm gradient");
    require_same_size(out.size(), dim(), "svm gradient output");
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& ex : dataset_.examples) {
        if (ex.label * ex.features.dot(x) > 1.0) continue;
        const auto& f = ex.features;
        for (std::size_t j = 0; j < f.nnz(); ++j) out[f.indices[j]] -= ex.label * f.values[j];
    }
    const double inv_m = 1.0 / static_cast<double>(dataset_.examples.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = lambda_ * x[i] + inv_m * out[i];
}

SvmDataset make_separable_svm(std::size_t m, std::size_t n, double margin, std::uint64_t seed) {
    if (m == 0 || n == 0) throw InvalidArgument("separable svm: m and n must be positive");
    if (!(margin >= 0.0) || !(margin < 0.5)) throw InvalidArgument("separable svm: margin must lie in [0, 0.5)");
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);

    std::vector<double> planted(n);
    for (double& v : planted) v = normal(rng);
    const double scale = norm(planted);
    for (double& v : planted) v /= scale;

    SvmDataset ds;
    ds.num_features = n;
    ds.name = "separable-svm";
    ds.examples.reserve(m);
    std::vector<double> x(n);
    while (ds.examples.size() < m) {
        for (double& v : x) v = coord(rng);
        const double s = dot(planted, x);
        if (std::abs(s) < margin || s == 0.0) continue;
        SparseExample ex;
        ex.label = s > 0.0 ? 1 : -1;
        for (std::size_t j = 0; j < n; ++j) {
            if (x[j] == 0.0) continue;
            ex.features.indices.push_back(static_cast<std::uint32_t>(j));
            ex.features.values.push_back(x[j]);
        }
        ds.examples.push_back(std::move(ex));
    }
    return ds;
}

}  // namespace spd
