#include "spd/problem.hpp"

#include "spd/error.hpp"
#include "spd/vector_ops.hpp"

namespace spd {

Problem::Problem(std::vector<BlockSpec> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InvalidArgument("a problem needs at least one block");
    offsets_.reserve(blocks_.size() + 1);
    offsets_.push_back(0);
    for (const auto& b : blocks_) offsets_.push_back(offsets_.back() + b.dim());
}

double Problem::true_objective(std::span<const double>) const {
    throw UnsupportedOperation("problem does not provide a true objective");
}

void Problem::true_gradient(std::span<const double>, std::span<double>) const {
    throw UnsupportedOperation("problem does not provide a true gradient");
}

std::vector<double> Problem::sample_grad(const SampleToken& token, std::span<const double> x,
                                         std::size_t block) const {
    require_same_size(x.size(), dim(), "sample_grad");
    std::vector<double> g(block_dim(block), 0.0);
    accumulate_block_grad(token, x, block, 1.0, g);
    return g;
}

std::vector<double> Problem::true_gradient(std::span<const double> x) const {
    require_same_size(x.size(), dim(), "true_gradient");
    std::vector<double> g(dim(), 0.0);
    true_gradient(x, std::span<double>(g));
    return g;
}

void Problem::project_joint(std::span<double> x) const {
    require_same_size(x.size(), dim(), "project_joint");
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        auto xl = block_view(x, l);
        project(blocks_[l].set(), xl, xl);
    }
}

bool Problem::is_feasible(std::span<const double> x, double tol) const {
    if (x.size() != dim()) return false;
    for (std::size_t l = 0; l < blocks_.size(); ++l)
        if (!contains(blocks_[l].set(), block_view(x, l), tol)) return false;
    return true;
}

std::vector<double> Problem::default_start() const {
    std::vector<double> x;
    x.reserve(dim());
    for (const auto& b : blocks_) {
        auto c = centroid(b.set());
        x.insert(x.end(), c.begin(), c.end());
    }
    return x;
}

std::vector<std::size_t> even_partition(std::size_t dim, std::size_t parts) {
    if (parts == 0 || parts > dim)
        throw InvalidArgument("cannot split " + std::to_string(dim) + " coordinates into " +
                              std::to_string(parts) + " non-empty blocks");
    std::vector<std::size_t> sizes(parts, dim / parts);
    for (std::size_t i = 0; i < dim % parts; ++i) ++sizes[i];
    return sizes;
}

}  // namespace spd
