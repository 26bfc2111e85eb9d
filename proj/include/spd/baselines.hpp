#pragma once

#include <span>
#include <variant>
#include <vector>

#include "spd/core.hpp"
#include "spd/problems/svm.hpp"

namespace spd {

// ---------------------------------------------------------------------------
// Pegasos

struct PegasosParams {
    double lambda = 1e-4;
};

/// One Pegasos update with eta_t = 1 / (lambda t):
///     w <- (1 - eta_t lambda) w + eta_t y x 1(y <x, w> < 1)
/// Pegasos uses a strict margin test, unlike the non-strict one of the SVM
/// sample gradient. At t = 1 the shrink factor is exactly zero.
std::vector<double> pegasos_step(std::span<const double> w, const SparseExample& ex, double lambda, std::uint64_t t);
void pegasos_step_inplace(std::span<double> w, const SparseExample& ex, double lambda, std::uint64_t t);

// ---------------------------------------------------------------------------
// Adam

struct AdamParams {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

void validate(const AdamParams& params);

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;

    explicit AdamState(std::size_t dim = 0) : m(dim, 0.0), v(dim, 0.0) {}
};

/// Bias-corrected Adam step on w in place. t >= 1 is the step count.
void adam_step(AdamState& state, std::span<double> w, std::span<const double> g, std::uint64_t t,
               const AdamParams& params);

// ---------------------------------------------------------------------------
// Iterate-averaged SCA (reference variant)

/// Runs the same tracker/surrogate inner iteration as `run`, but reports the
/// running average xbar^k = (1 - rho_k) xbar^{k-1} + rho_k x^k with
/// rho_k = k^(-rho_avg). rho_avg must lie in (rho_alpha, 1] so the averaging
/// weight vanishes faster than the step size. `pin_weight` forces rho_k = 1,
/// which reduces the method to the plain inner iterate.
struct AveragingParams {
    double rho_avg = 0.95;
    bool pin_weight = false;
};

void validate(const AveragingParams& params, const Schedule& schedule);
double averaging_weight(const AveragingParams& params, std::uint64_t k);

// ---------------------------------------------------------------------------
// Runners. All of them draw `batch_size` tokens per iteration from
// problem.draw with an engine seeded by config.seed, so equal (seed, batch)
// pairs see identical sample streams.

using BaselineParams = std::variant<PegasosParams, AdamParams, AveragingParams>;

struct BaselineConfig {
    BaselineParams params;
    /// Common fields. Pegasos and Adam ignore the schedule and the worker count.
    RunConfig run;
};

/// Pegasos needs an SvmProblem; the others accept any Problem. The final
/// point is the last iterate (Pegasos, Adam) or the averaged iterate.
RunResult run_baseline(const Problem& problem, const BaselineConfig& config, std::span<const double> x0);

RunResult run_pegasos(const SvmProblem& problem, const PegasosParams& params, const RunConfig& config,
                      std::span<const double> x0);
RunResult run_adam(const Problem& problem, const AdamParams& params, const RunConfig& config,
                   std::span<const double> x0);
RunResult run_averaged_sca(const Problem& problem, const AveragingParams& params, const RunConfig& config,
                           std::span<const double> x0);

}  // namespace spd
