#include "spd/core.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>

#include "spd/error.hpp"
#include "spd/vector_ops.hpp"

namespace spd {

std::vector<double> update_tracker(std::span<const double> h_prev, std::span<const double> g, double omega) {
    std::vector<double> h(h_prev.begin(), h_prev.end());
    update_tracker_inplace(h, g, omega);
    return h;
}

void update_tracker_inplace(std::span<double> h, std::span<const double> g, double omega) {
    require_same_size(h.size(), g.size(), "update_tracker");
    if (!(omega > 0.0 && omega <= 1.0)) throw InvalidArgument("tracker weight omega must lie in (0, 1]");
    const double keep = 1.0 - omega;
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = keep * h[i] + omega * g[i];
}

std::vector<double> explicit_weights(std::span<const double> omegas) {
    if (omegas.empty()) return {};
    if (omegas[0] != 1.0) throw InvalidArgument("explicit_weights: omega_1 must equal 1");
    for (double w : omegas)
        if (!(w > 0.0 && w <= 1.0)) throw InvalidArgument("explicit_weights: every omega must lie in (0, 1]");

    std::vector<double> weights(omegas.size());
    double tail = 1.0;  // prod_{j > i} (1 - omega_j)
    for (std::size_t i = omegas.size(); i-- > 0;) {
        weights[i] = omegas[i] * tail;
        tail *= 1.0 - omegas[i];
    }
    return weights;
}

void minimize_surrogate(std::span<const double> x_prev, std::span<const double> h, double alpha,
                        const FeasibleSet& set, std::span<double> out) {
    require_same_size(x_prev.size(), h.size(), "minimize_surrogate");
    require_same_size(x_prev.size(), out.size(), "minimize_surrogate output");
    if (!(alpha > 0.0)) throw InvalidArgument("minimize_surrogate: alpha must be positive");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x_prev[i] - alpha * h[i];
    project(set, out, out);
}

std::vector<double> minimize_surrogate(std::span<const double> x_prev, std::span<const double> h, double alpha,
                                       const FeasibleSet& set) {
    std::vector<double> out(x_prev.size());
    minimize_surrogate(x_prev, h, alpha, set, out);
    return out;
}

void validate(const RunConfig& config) {
    if (config.batch_size == 0) throw InvalidArgument("batch size must be positive");
    if (config.eval_every == 0) throw InvalidArgument("eval_every must be positive");
    if (config.max_iters > 0 && config.eval_every > config.max_iters)
        throw InvalidArgument("eval_every must not exceed max_iters");
    if (const auto* t = std::get_if<StepNormBelow>(&config.termination)) {
        if (!(t->tolerance > 0.0)) throw InvalidArgument("step-norm tolerance must be positive");
    }
}

std::size_t resolve_workers(std::size_t requested) {
    if (requested != 0) return requested;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Persistent workers with a barrier at the end of every dispatch. Worker w
// owns blocks w, w + W, w + 2W, ...; the calling thread acts as worker 0.
class Engine::Pool {
public:
    Pool(std::size_t workers, std::size_t blocks) : workers_(std::max<std::size_t>(1, std::min(workers, blocks))), blocks_(blocks) {
        for (std::size_t w = 1; w < workers_; ++w) threads_.emplace_back([this, w] { loop(w); });
    }

    ~Pool() {
        {
            std::lock_guard lock(mutex_);
            stop_ = true;
            ++generation_;
        }
        start_cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    template <class Fn>
    void run(Fn&& fn) {
        if (workers_ == 1) {
            for (std::size_t l = 0; l < blocks_; ++l) fn(l);
            return;
        }
        std::function<void(std::size_t)> task(std::forward<Fn>(fn));
        {
            std::lock_guard lock(mutex_);
            task_ = &task;
            pending_ = workers_ - 1;
            ++generation_;
        }
        start_cv_.notify_all();
        for (std::size_t l = 0; l < blocks_; l += workers_) task(l);
        std::unique_lock lock(mutex_);
        done_cv_.wait(lock, [this] { return pending_ == 0; });
        task_ = nullptr;
    }

private:
    void loop(std::size_t w) {
        std::uint64_t seen = 0;
        for (;;) {
            const std::function<void(std::size_t)>* task = nullptr;
            {
                std::unique_lock lock(mutex_);
                start_cv_.wait(lock, [&] { return generation_ != seen; });
                seen = generation_;
                if (stop_) return;
                task = task_;
            }
            for (std::size_t l = w; l < blocks_; l += workers_) (*task)(l);
            {
                std::lock_guard lock(mutex_);
                if (--pending_ == 0) done_cv_.notify_one();
            }
        }
    }

    std::size_t workers_;
    std::size_t blocks_;
    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(std::size_t)>* task_ = nullptr;
    std::size_t pending_ = 0;
    std::uint64_t generation_ = 0;
    bool stop_ = false;
};

namespace {
enum BlockStatus : std::uint8_t { kOk = 0, kBadGradient = 1, kBadIterate = 2, kThrew = 3 };
}

Engine::Engine(const Problem& problem, const RunConfig& config, std::span<const double> x0)
    : problem_(problem), config_(config), rng_(config.seed) {
    validate(config_);
    require_same_size(x0.size(), problem_.dim(), "initial point");
    x_.assign(x0.begin(), x0.end());
    problem_.project_joint(x_);
    x_prev_ = x_;
    h_.assign(problem_.dim(), 0.0);
    grad_.assign(problem_.dim(), 0.0);
    block_step_sq_.assign(problem_.num_blocks(), 0.0);
    block_failed_.assign(problem_.num_blocks(), kOk);
    batch_.resize(config_.batch_size);
    pool_ = std::make_unique<Pool>(resolve_workers(config_.workers), problem_.num_blocks());
}

Engine::~Engine() = default;

void Engine::update_block(std::size_t l) {
    const std::span<const double> x_prev(x_prev_);
    auto g = problem_.block_view(std::span<double>(grad_), l);
    auto h = problem_.block_view(std::span<double>(h_), l);
    auto x = problem_.block_view(std::span<double>(x_), l);
    const auto xp = problem_.block_view(x_prev, l);

    std::fill(g.begin(), g.end(), 0.0);
    for (const auto& token : batch_) problem_.accumulate_block_grad(token, x_prev, l, 1.0, g);
    if (batch_.size() > 1) {
        const double inv = 1.0 / static_cast<double>(batch_.size());
        for (double& v : g) v *= inv;
    }
    if (!all_finite(g)) {
        block_failed_[l] = kBadGradient;
        return;
    }
    update_tracker_inplace(h, g, omega_);
    minimize_surrogate(xp, h, alpha_, problem_.blocks()[l].set(), x);
    if (!all_finite(x)) {
        block_failed_[l] = kBadIterate;
        return;
    }
    block_step_sq_[l] = squared_distance(x, xp);
}

double Engine::step() {
    ++k_;
    omega_ = config_.schedule.omega(k_);
    alpha_ = config_.schedule.alpha(k_);
    for (auto& token : batch_) token = problem_.draw(rng_);
    if (config_.on_batch) config_.on_batch(k_, batch_);

    std::swap(x_prev_, x_);
    std::vector<std::exception_ptr> errors(problem_.num_blocks());
    pool_->run([&](std::size_t l) {
        try {
            update_block(l);
        } catch (...) {
            errors[l] = std::current_exception();
            block_failed_[l] = kThrew;
        }
    });

    double step_sq = 0.0;
    for (std::size_t l = 0; l < problem_.num_blocks(); ++l) {
        switch (block_failed_[l]) {
            case kBadGradient:
                throw NumericalFailure(k_, l, "non-finite sample gradient");
            case kBadIterate:
                throw NumericalFailure(k_, l, "non-finite iterate");
            case kThrew:
                std::rethrow_exception(errors[l]);
            default:
                break;
        }
        step_sq += block_step_sq_[l];
    }
    return std::sqrt(step_sq);
}

TraceRecord make_trace_record(const Problem& problem, std::uint64_t k, std::span<const double> x,
                              double step_norm, std::span<const double> tracker,
                              std::chrono::steady_clock::time_point start) {
    TraceRecord rec;
    rec.k = k;
    rec.step_norm = step_norm;
    if (problem.has_true_objective()) rec.objective = problem.true_objective(x);
    if (!tracker.empty() && problem.has_true_gradient()) {
        const auto grad = problem.true_gradient(x);
        rec.tracker_error = distance(tracker, grad);
    }
    rec.elapsed_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

RunResult run(const Problem& problem, const RunConfig& config, std::span<const double> x0,
              const IterationObserver& observer) {
    const auto start = std::chrono::steady_clock::now();
    Engine engine(problem, config, x0);
    RunResult result;
    const double tolerance =
        std::holds_alternative<StepNormBelow>(config.termination) ? std::get<StepNormBelow>(config.termination).tolerance : -1.0;

    for (std::uint64_t k = 1; k <= config.max_iters; ++k) {
        const double step_norm = engine.step();
        if (observer)
            observer(IterationView{k, engine.last_omega(), engine.last_alpha(), engine.x_prev(), engine.x(),
                                   engine.tracker()});
        const bool stop = tolerance > 0.0 && step_norm / engine.last_alpha() <= tolerance;
        if (k % config.eval_every == 0 || stop || k == config.max_iters)
            result.trace.push_back(make_trace_record(problem, k, engine.x(), step_norm, engine.tracker(), start));
        if (stop) break;
    }
    result.x.assign(engine.x().begin(), engine.x().end());
    result.iterations = engine.iteration();
    return result;
}

double stationarity_residual(const Problem& problem, std::span<const double> x, double alpha_probe) {
    if (!problem.has_true_gradient())
        throw UnsupportedOperation("stationarity_residual needs the problem's true gradient");
    if (!(alpha_probe > 0.0)) throw InvalidArgument("stationarity_residual: alpha_probe must be positive");
    require_same_size(x.size(), problem.dim(), "stationarity_residual");
    const auto grad = problem.true_gradient(x);
    std::vector<double> p(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] - alpha_probe * grad[i];
    problem.project_joint(p);
    return distance(x, p) / alpha_probe;
}

}  // namespace spd
