#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace spd {

struct Unconstrained {
    std::size_t dim = 0;
};

/// Per-coordinate bounds. Infinite bounds are accepted (half-lines), NaN is not.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;
};

struct L2Ball {
    std::vector<double> center;
    double radius = 1.0;
};

using FeasibleSet = std::variant<Unconstrained, Box, L2Ball>;

std::size_t set_dim(const FeasibleSet& set);

/// Throws InvalidArgument unless the descriptor is well formed.
void validate(const FeasibleSet& set);

/// Euclidean projection of `p` onto `set`, written to `out` (may alias `p`).
void project(const FeasibleSet& set, std::span<const double> p, std::span<double> out);
std::vector<double> project(const FeasibleSet& set, std::span<const double> p);

bool contains(const FeasibleSet& set, std::span<const double> p, double tol = 0.0);

/// A representative interior point: box midpoint (or the finite bound of a
/// half-line), ball center, origin when unconstrained.
std::vector<double> centroid(const FeasibleSet& set);

/// One agent's block of the joint variable and its feasible set.
///
/// Unconstrained blocks are not compact. They are accepted anyway so that the
/// linear SVM (an unconstrained problem) fits the same engine.
class BlockSpec {
public:
    static BlockSpec unconstrained(std::size_t dim);
    static BlockSpec box(std::vector<double> lower, std::vector<double> upper);
    static BlockSpec box(std::size_t dim, double lower, double upper);
    static BlockSpec ball(std::vector<double> center, double radius);

    explicit BlockSpec(FeasibleSet set);

    std::size_t dim() const noexcept { return dim_; }
    const FeasibleSet& set() const noexcept { return set_; }
    bool is_compact() const noexcept;

private:
    FeasibleSet set_;
    std::size_t dim_ = 0;
};

}  // namespace spd
