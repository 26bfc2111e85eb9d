#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "spd/feasible_set.hpp"
#include "spd/problem.hpp"
#include "spd/schedule.hpp"

namespace spd {

// ---------------------------------------------------------------------------
// Single-step building blocks

/// (1 - omega) * h_prev + omega * g, elementwise. omega in (0, 1].
std::vector<double> update_tracker(std::span<const double> h_prev, std::span<const double> g, double omega);

/// In-place form: h <- (1 - omega) * h + omega * g.
void update_tracker_inplace(std::span<double> h, std::span<const double> g, double omega);

/// Weights w_i = omega_i * prod_{j > i} (1 - omega_j), i = 1..k, which express
/// the recursive tracker as an explicit convex combination of the gradient
/// stream. Requires omega_1 = 1, every omega_j in (0, 1]; the result sums to 1.
std::vector<double> explicit_weights(std::span<const double> omegas);

/// argmin over `set` of  |x - x_prev|^2 / (2 alpha) + <h, x - x_prev>,
/// which is the projection of x_prev - alpha * h onto `set`.
std::vector<double> minimize_surrogate(std::span<const double> x_prev, std::span<const double> h, double alpha,
                                       const FeasibleSet& set);
void minimize_surrogate(std::span<const double> x_prev, std::span<const double> h, double alpha,
                        const FeasibleSet& set, std::span<double> out);

// ---------------------------------------------------------------------------
// Run configuration and trace

struct MaxIters {};

/// Stop once |x^k - x^{k-1}| / alpha_k <= tolerance.
struct StepNormBelow {
    double tolerance = 1e-6;
};

using Termination = std::variant<MaxIters, StepNormBelow>;

/// Called by the coordinator with the batch drawn for iteration k, before any
/// gradient is evaluated.
using BatchObserver = std::function<void(std::uint64_t k, std::span<const SampleToken> batch)>;

struct RunConfig {
    std::size_t batch_size = 1;
    std::uint64_t max_iters = 1000;
    std::uint64_t seed = 0;
    Schedule schedule;
    std::uint64_t eval_every = 100;
    Termination termination = MaxIters{};
    /// Threads executing block updates. 0 means std::thread::hardware_concurrency().
    std::size_t workers = 1;
    BatchObserver on_batch;
};

/// Throws InvalidArgument on an inconsistent configuration.
void validate(const RunConfig& config);

struct TraceRecord {
    std::uint64_t k = 0;
    std::optional<double> objective;
    double step_norm = 0.0;
    std::optional<double> tracker_error;
    std::int64_t elapsed_ns = 0;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct RunResult {
    std::vector<double> x;
    std::vector<TraceRecord> trace;
    std::uint64_t iterations = 0;
};

/// What an iteration observer sees after iteration k completed.
struct IterationView {
    std::uint64_t k;
    double omega;
    double alpha;
    std::span<const double> x_prev;
    std::span<const double> x;
    std::span<const double> h;
};

using IterationObserver = std::function<void(const IterationView&)>;

// ---------------------------------------------------------------------------
// Engine

/// Iterates the tracker/surrogate recursion one step at a time.
///
/// Each step draws the batch on the calling thread, then updates every block
/// from (x^{k-1}, batch) alone, so the blocks run in parallel without changing
/// any result. Single owner; not copyable.
class Engine {
public:
    Engine(const Problem& problem, const RunConfig& config, std::span<const double> x0);
    ~Engine();
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    /// Performs iteration k + 1 and returns |x^{k+1} - x^k|.
    /// Throws NumericalFailure on a non-finite gradient or iterate.
    double step();

    std::uint64_t iteration() const noexcept { return k_; }
    std::span<const double> x() const noexcept { return x_; }
    std::span<const double> x_prev() const noexcept { return x_prev_; }
    std::span<const double> tracker() const noexcept { return h_; }
    double last_omega() const noexcept { return omega_; }
    double last_alpha() const noexcept { return alpha_; }
    const Problem& problem() const noexcept { return problem_; }

private:
    class Pool;

    void update_block(std::size_t block);

    const Problem& problem_;
    RunConfig config_;
    Rng rng_;
    std::uint64_t k_ = 0;
    double omega_ = 0.0;
    double alpha_ = 0.0;
    std::vector<double> x_;
    std::vector<double> x_prev_;
    std::vector<double> h_;
    std::vector<double> grad_;
    std::vector<double> block_step_sq_;
    std::vector<SampleToken> batch_;
    std::vector<std::uint8_t> block_failed_;
    std::unique_ptr<Pool> pool_;
};

/// Runs the recursion from x0 (projected onto the feasible set first) until
/// the termination rule fires or max_iters is reached. Records a trace row
/// every eval_every iterations and at the last iteration.
RunResult run(const Problem& problem, const RunConfig& config, std::span<const double> x0,
              const IterationObserver& observer = {});

/// |x - P_X(x - alpha * grad F(x))| / alpha. Zero exactly at first-order
/// stationary points. Needs the problem's true gradient.
double stationarity_residual(const Problem& problem, std::span<const double> x, double alpha_probe);

/// Row builder shared with the baselines.
TraceRecord make_trace_record(const Problem& problem, std::uint64_t k, std::span<const double> x,
                              double step_norm, std::span<const double> tracker,
                              std::chrono::steady_clock::time_point start);

std::size_t resolve_workers(std::size_t requested);

}  // namespace spd
