#include "spd/baselines.hpp"

#include <cmath>

#include "spd/error.hpp"
#include "spd/vector_ops.hpp"

namespace spd {

namespace {

bool due(std::uint64_t k, const RunConfig& config) { return k % config.eval_every == 0 || k == config.max_iters; }

void draw_batch(const Problem& problem, Rng& rng, std::uint64_t k, const RunConfig& config,
                std::vector<SampleToken>& batch) {
    for (auto& token : batch) token = problem.draw(rng);
    if (config.on_batch) config.on_batch(k, batch);
}

std::vector<double> feasible_start(const Problem& problem, std::span<const double> x0) {
    require_same_size(x0.size(), problem.dim(), "initial point");
    std::vector<double> x(x0.begin(), x0.end());
    problem.project_joint(x);
    return x;
}

}  // namespace

void pegasos_step_inplace(std::span<double> w, const SparseExample& ex, double lambda, std::uint64_t t) {
    if (t == 0) throw InvalidArgument("pegasos_step: t must be >= 1");
    if (!(lambda > 0.0)) throw InvalidArgument("pegasos_step: lambda must be positive");
    const double eta = 1.0 / (lambda * static_cast<double>(t));
    const bool violated = ex.label * ex.features.dot(w) < 1.0;
    const double shrink = 1.0 - 1.0 / static_cast<double>(t);  // == 1 - eta * lambda
    for (double& v : w) v *= shrink;
    if (violated) {
        const auto& f = ex.features;
        for (std::size_t j = 0; j < f.nnz(); ++j) w[f.indices[j]] += eta * ex.label * f.values[j];
    }
}

std::vector<double> pegasos_step(std::span<const double> w, const SparseExample& ex, double lambda, std::uint64_t t) {
    std::vector<double> out(w.begin(), w.end());
    pegasos_step_inplace(out, ex, lambda, t);
    return out;
}

void validate(const AdamParams& p) {
    if (!(p.learning_rate > 0.0)) throw InvalidArgument("adam: learning rate must be positive");
    if (!(p.beta1 >= 0.0 && p.beta1 < 1.0)) throw InvalidArgument("adam: beta1 must lie in [0, 1)");
    if (!(p.beta2 >= 0.0 && p.beta2 < 1.0)) throw InvalidArgument("adam: beta2 must lie in [0, 1)");
    if (!(p.epsilon > 0.0)) throw InvalidArgument("adam: epsilon must be positive");
}

void adam_step(AdamState& state, std::span<double> w, std::span<const double> g, std::uint64_t t,
               const AdamParams& p) {
    require_same_size(w.size(), g.size(), "adam_step");
    require_same_size(state.m.size(), w.size(), "adam state");
    require_same_size(state.v.size(), w.size(), "adam state");
    if (t == 0) throw InvalidArgument("adam_step: t must be >= 1");
    const double td = static_cast<double>(t);
    const double c1 = 1.0 - std::pow(p.beta1, td);
    const double c2 = 1.0 - std::pow(p.beta2, td);
    for (std::size_t i = 0; i < w.size(); ++i) {
        state.m[i] = p.beta1 * state.m[i] + (1.0 - p.beta1) * g[i];
        state.v[i] = p.beta2 * state.v[i] + (1.0 - p.beta2) * g[i] * g[i];
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        w[i] -= p.learning_rate * m_hat / (std::sqrt(v_hat) + p.epsilon);
    }
}

void validate(const AveragingParams& params, const Schedule& schedule) {
    if (params.pin_weight) return;
    if (!(params.rho_avg <= 1.0)) throw InvalidArgument("averaged SCA: rho_avg must not exceed 1");
    if (schedule.is_power_law() && !(params.rho_avg > schedule.params().rho_alpha))
        throw InvalidArgument("averaged SCA: rho_avg must exceed rho_alpha");
}

double averaging_weight(const AveragingParams& params, std::uint64_t k) {
    if (params.pin_weight || k <= 1) return 1.0;
    return std::pow(static_cast<double>(k), -params.rho_avg);
}

RunResult run_pegasos(const SvmProblem& problem, const PegasosParams& params, const RunConfig& config,
                      std::span<const double> x0) {
    validate(config);
    if (!(params.lambda > 0.0)) throw InvalidArgument("pegasos: lambda must be positive");
    const auto start = std::chrono::steady_clock::now();
    Rng rng(config.seed);
    std::vector<SampleToken> batch(config.batch_size);
    std::vector<double> w = feasible_start(problem, x0);
    std::vector<double> prev(w.size());
    const auto& data = problem.dataset().examples;
    const double lambda = params.lambda;

    RunResult result;
    for (std::uint64_t t = 1; t <= config.max_iters; ++t) {
        draw_batch(problem, rng, t, config, batch);
        prev = w;
        if (batch.size() == 1) {
            pegasos_step_inplace(w, data.at(batch[0].index), lambda, t);
        } else {
            // Mini-batch form: average the violators' contributions over the batch.
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double coef = eta / static_cast<double>(batch.size());
            std::vector<const SparseExample*> violators;
            for (const auto& token : batch) {
                const auto& ex = data.at(token.index);
                if (ex.label * ex.features.dot(prev) < 1.0) violators.push_back(&ex);
            }
            const double shrink = 1.0 - 1.0 / static_cast<double>(t);
            for (double& v : w) v *= shrink;
            for (const auto* ex : violators)
                for (std::size_t j = 0; j < ex->features.nnz(); ++j)
                    w[ex->features.indices[j]] += coef * ex->label * ex->features.values[j];
        }
        if (!all_finite(w)) throw NumericalFailure(t, 0, "non-finite Pegasos iterate");
        if (due(t, config)) result.trace.push_back(make_trace_record(problem, t, w, distance(w, prev), {}, start));
    }
    result.x = std::move(w);
    result.iterations = config.max_iters;
    return result;
}

RunResult run_adam(const Problem& problem, const AdamParams& params, const RunConfig& config,
                   std::span<const double> x0) {
    validate(config);
    validate(params);
    const auto start = std::chrono::steady_clock::now();
    Rng rng(config.seed);
    std::vector<SampleToken> batch(config.batch_size);
    std::vector<double> w = feasible_start(problem, x0);
    std::vector<double> prev(w.size());
    std::vector<double> g(w.size());
    AdamState state(w.size());
    const double inv_b = 1.0 / static_cast<double>(batch.size());

    RunResult result;
    for (std::uint64_t t = 1; t <= config.max_iters; ++t) {
        draw_batch(problem, rng, t, config, batch);
        std::fill(g.begin(), g.end(), 0.0);
        for (std::size_t l = 0; l < problem.num_blocks(); ++l) {
            auto gl = problem.block_view(std::span<double>(g), l);
            for (const auto& token : batch) problem.accumulate_block_grad(token, w, l, inv_b, gl);
            if (!all_finite(gl)) throw NumericalFailure(t, l, "non-finite sample gradient");
        }
        prev = w;
        adam_step(state, w, g, t, params);
        problem.project_joint(w);
        if (!all_finite(w)) throw NumericalFailure(t, 0, "non-finite Adam iterate");
        if (due(t, config)) result.trace.push_back(make_trace_record(problem, t, w, distance(w, prev), {}, start));
    }
    result.x = std::move(w);
    result.iterations = config.max_iters;
    return result;
}

RunResult run_averaged_sca(const Problem& problem, const AveragingParams& params, const RunConfig& config,
                           std::span<const double> x0) {
    validate(params, config.schedule);
    const auto start = std::chrono::steady_clock::now();
    Engine engine(problem, config, x0);
    std::vector<double> avg(engine.x().begin(), engine.x().end());
    std::vector<double> prev(avg.size());
    const double tolerance = std::holds_alternative<StepNormBelow>(config.termination)
                                 ? std::get<StepNormBelow>(config.termination).tolerance
                                 : -1.0;

    RunResult result;
    for (std::uint64_t k = 1; k <= config.max_iters; ++k) {
        const double inner_step = engine.step();
        const double rho = averaging_weight(params, k);
        prev = avg;
        const auto x = engine.x();
        if (rho == 1.0) {
            std::copy(x.begin(), x.end(), avg.begin());
        } else {
            for (std::size_t i = 0; i < avg.size(); ++i) avg[i] = (1.0 - rho) * avg[i] + rho * x[i];
        }
        const bool stop = tolerance > 0.0 && inner_step / engine.last_alpha() <= tolerance;
        if (due(k, config) || stop)
            result.trace.push_back(
                make_trace_record(problem, k, avg, rho == 1.0 ? inner_step : distance(avg, prev), {}, start));
        if (stop) break;
    }
    result.x = std::move(avg);
    result.iterations = engine.iteration();
    return result;
}

RunResult run_baseline(const Problem& problem, const BaselineConfig& config, std::span<const double> x0) {
    return std::visit(
        [&](const auto& params) -> RunResult {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, PegasosParams>) {
                const auto* svm = dynamic_cast<const SvmProblem*>(&problem);
                if (svm == nullptr) throw InvalidArgument("Pegasos needs an SVM problem");
                return run_pegasos(*svm, params, config.run, x0);
            } else if constexpr (std::is_same_v<T, AdamParams>) {
                return run_adam(problem, params, config.run, x0);
            } else {
                return run_averaged_sca(problem, params, config.run, x0);
            }
        },
        config.params);
}

}  // namespace spd
