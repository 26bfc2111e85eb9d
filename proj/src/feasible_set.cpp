#include "spd/feasible_set.hpp"

#include <algorithm>
#include <cmath>

#include "spd/error.hpp"
#include "spd/vector_ops.hpp"

namespace spd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::size_t set_dim(const FeasibleSet& set) {
    return std::visit(overloaded{[](const Unconstrained& u) { return u.dim; },
                                 [](const Box& b) { return b.lower.size(); },
                                 [](const L2Ball& b) { return b.center.size(); }},
                      set);
}

void validate(const FeasibleSet& set) {
    std::visit(overloaded{[](const Unconstrained& u) {
                              if (u.dim == 0) throw InvalidArgument("block dimension must be positive");
                          },
                          [](const Box& b) {
                              if (b.lower.empty()) throw InvalidArgument("block dimension must be positive");
                              require_same_size(b.lower.size(), b.upper.size(), "box bounds");
                              for (std::size_t i = 0; i < b.lower.size(); ++i) {
                                  if (std::isnan(b.lower[i]) || std::isnan(b.upper[i]))
                                      throw InvalidArgument("box bound is NaN");
                                  if (b.lower[i] > b.upper[i])
                                      throw InvalidArgument("box lower bound exceeds upper bound at coordinate " +
                                                            std::to_string(i));
                              }
                          },
                          [](const L2Ball& b) {
                              if (b.center.empty()) throw InvalidArgument("block dimension must be positive");
                              if (!all_finite(b.center)) throw InvalidArgument("ball center is not finite");
                              if (!(b.radius > 0.0) || !std::isfinite(b.radius))
                                  throw InvalidArgument("ball radius must be positive and finite");
                          }},
               set);
}

void project(const FeasibleSet& set, std::span<const double> p, std::span<double> out) {
    require_same_size(p.size(), set_dim(set), "project");
    require_same_size(out.size(), p.size(), "project output");
    std::visit(overloaded{[&](const Unconstrained&) {
                              if (out.data() != p.data()) std::copy(p.begin(), p.end(), out.begin());
                          },
                          [&](const Box& b) {
                              for (std::size_t i = 0; i < p.size(); ++i)
                                  out[i] = std::clamp(p[i], b.lower[i], b.upper[i]);
                          },
                          [&](const L2Ball& b) {
                              const double dist = distance(p, b.center);
                              if (dist <= b.radius) {
                                  if (out.data() != p.data()) std::copy(p.begin(), p.end(), out.begin());
                                  return;
                              }
                              // Rounding can leave the scaled point just outside; shrink
                              // until it is inside so that projecting again is a no-op.
                              double scale = b.radius / dist;
                              std::vector<double> q(p.begin(), p.end());
                              for (int tries = 0; tries < 64; ++tries) {
                                  for (std::size_t i = 0; i < q.size(); ++i)
                                      out[i] = b.center[i] + scale * (q[i] - b.center[i]);
                                  if (distance(out, b.center) <= b.radius) break;
                                  scale = std::nextafter(scale, 0.0) * (1.0 - 1e-16 * (tries + 1));
                              }
                          }},
               set);
}

std::vector<double> project(const FeasibleSet& set, std::span<const double> p) {
    std::vector<double> out(p.size());
    project(set, p, out);
    return out;
}

bool contains(const FeasibleSet& set, std::span<const double> p, double tol) {
    if (p.size() != set_dim(set)) return false;
    return std::visit(overloaded{[&](const Unconstrained&) { return true; },
                                 [&](const Box& b) {
                                     for (std::size_t i = 0; i < p.size(); ++i)
                                         if (p[i] < b.lower[i] - tol || p[i] > b.upper[i] + tol) return false;
                                     return true;
                                 },
                                 [&](const L2Ball& b) { return distance(p, b.center) <= b.radius + tol; }},
                      set);
}

std::vector<double> centroid(const FeasibleSet& set) {
    return std::visit(overloaded{[](const Unconstrained& u) { return std::vector<double>(u.dim, 0.0); },
                                 [](const Box& b) {
                                     std::vector<double> c(b.lower.size());
                                     for (std::size_t i = 0; i < c.size(); ++i) {
                                         const bool lo = std::isfinite(b.lower[i]);
                                         const bool hi = std::isfinite(b.upper[i]);
                                         if (lo && hi)
                                             c[i] = 0.5 * (b.lower[i] + b.upper[i]);
                                         else if (lo)
                                             c[i] = b.lower[i];
                                         else if (hi)
                                             c[i] = b.upper[i];
                                         else
                                             c[i] = 0.0;
                                     }
                                     return c;
                                 },
                                 [](const L2Ball& b) { return b.center; }},
                      set);
}

BlockSpec::BlockSpec(FeasibleSet set) : set_(std::move(set)) {
    validate(set_);
    dim_ = set_dim(set_);
}

BlockSpec BlockSpec::unconstrained(std::size_t dim) { return BlockSpec(Unconstrained{dim}); }

BlockSpec BlockSpec::box(std::vector<double> lower, std::vector<double> upper) {
    return BlockSpec(Box{std::move(lower), std::move(upper)});
}

BlockSpec BlockSpec::box(std::size_t dim, double lower, double upper) {
    return box(std::vector<double>(dim, lower), std::vector<double>(dim, upper));
}

BlockSpec BlockSpec::ball(std::vector<double> center, double radius) {
    return BlockSpec(L2Ball{std::move(center), radius});
}

bool BlockSpec::is_compact() const noexcept {
    if (const auto* b = std::get_if<Box>(&set_)) {
        for (std::size_t i = 0; i < b->lower.size(); ++i)
            if (!std::isfinite(b->lower[i]) || !std::isfinite(b->upper[i])) return false;
        return true;
    }
    return std::holds_alternative<L2Ball>(set_);
}

}  // namespace spd
