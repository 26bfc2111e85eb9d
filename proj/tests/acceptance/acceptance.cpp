// End-to-end acceptance checks. Prints one PASS/FAIL/SKIP line per criterion
// and exits non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "spd/baselines.hpp"
#include "spd/core.hpp"
#include "spd/error.hpp"
#include "spd/io.hpp"
#include "spd/problems/nonconvex.hpp"
#include "spd/problems/quadratic.hpp"
#include "spd/problems/svm.hpp"
#include "spd/vector_ops.hpp"

namespace fs = std::filesystem;
using namespace spd;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status = Status::Fail;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Runtime budgets are part of the criteria.
Outcome within_budget(Outcome o, double elapsed, double budget) {
    o.detail += "; " + fmt("%.2f", elapsed) + " s (budget " + fmt("%.0f", budget) + " s)";
    if (o.status == Status::Pass && elapsed > budget) o.status = Status::Fail;
    return o;
}

// ---------------------------------------------------------------------------

Outcome weights_and_tracker() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> normal;
    constexpr std::size_t kLen = 10'000;
    constexpr std::size_t kDim = 5;

    double worst_rel = 0.0;
    double worst_sum = 0.0;
    for (int seq = 0; seq < 50; ++seq) {
        std::vector<double> omegas(kLen);
        omegas[0] = 1.0;
        for (std::size_t k = 1; k < kLen; ++k) omegas[k] = 1.0 - u(rng);  // (0, 1]

        // Recursive tracker on a random gradient stream, compared with the
        // explicit weighted sum at 20 prefixes.
        std::vector<std::vector<double>> grads(kLen, std::vector<double>(kDim));
        for (auto& g : grads)
            for (double& v : g) v = normal(rng);
        std::vector<std::size_t> checkpoints{1, 2, 3, kLen};
        while (checkpoints.size() < 20) checkpoints.push_back(1 + rng() % kLen);
        std::sort(checkpoints.begin(), checkpoints.end());

        std::vector<double> h(kDim, 0.0);
        std::size_t next = 0;
        for (std::size_t k = 1; k <= kLen && next < checkpoints.size(); ++k) {
            update_tracker_inplace(h, grads[k - 1], omegas[k - 1]);
            while (next < checkpoints.size() && checkpoints[next] == k) {
                const auto w = explicit_weights(std::span<const double>(omegas.data(), k));
                std::vector<double> explicit_sum(kDim, 0.0);
                double sum = 0.0;
                for (std::size_t i = 0; i < k; ++i) {
                    sum += w[i];
                    for (std::size_t j = 0; j < kDim; ++j) explicit_sum[j] += w[i] * grads[i][j];
                }
                worst_rel = std::max(worst_rel, distance(h, explicit_sum) / std::max(norm(explicit_sum), 1e-300));
                worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
                ++next;
            }
        }
    }

    // Normalization for every k <= 10^4 on the default schedule.
    const Schedule s;
    std::vector<double> omegas;
    for (std::size_t k = 1; k <= kLen; ++k) {
        omegas.push_back(s.omega(k));
        const auto w = explicit_weights(omegas);
        double sum = 0.0;
        for (double v : w) sum += v;
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }

    Outcome o;
    o.status = worst_rel <= 1e-10 && worst_sum <= 1e-12 ? Status::Pass : Status::Fail;
    o.detail = "max relative gap " + fmt("%.3g", worst_rel) + ", max |sum - 1| " + fmt("%.3g", worst_sum);
    return o;
}

// Closed-form projection written independently of the library.
std::vector<double> reference_projection(const FeasibleSet& set, const std::vector<double>& p) {
    std::vector<double> q = p;
    if (const auto* b = std::get_if<Box>(&set)) {
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::min(std::max(q[i], b->lower[i]), b->upper[i]);
    } else if (const auto* ball = std::get_if<L2Ball>(&set)) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) d2 += (p[i] - ball->center[i]) * (p[i] - ball->center[i]);
        const double d = std::sqrt(d2);
        if (d > ball->radius)
            for (std::size_t i = 0; i < q.size(); ++i)
                q[i] = ball->center[i] + ball->radius / d * (p[i] - ball->center[i]);
    }
    return q;
}

Outcome surrogate_identity() {
    std::mt19937_64 rng(202);
    std::normal_distribution<double> normal(0.0, 2.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t exact_mismatch = 0;
    double worst_reference = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + trial % 6;
        std::vector<double> x(n), h(n), lo(n), hi(n), c(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = normal(rng);
            h[i] = normal(rng);
            lo[i] = -u(rng) * 2;
            hi[i] = u(rng) * 2;
            c[i] = normal(rng) * 0.5;
        }
        const double alpha = std::exp(-6.0 * u(rng)) * 2.0;
        FeasibleSet set;
        switch (trial % 3) {
            case 0: set = Box{lo, hi}; break;
            case 1: set = L2Ball{c, 0.1 + 2 * u(rng)}; break;
            default: set = Unconstrained{n}; break;
        }
        const auto got = minimize_surrogate(x, h, alpha, set);
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = x[i] - alpha * h[i];
        if (got != project(set, p)) ++exact_mismatch;
        const auto ref = reference_projection(set, p);
        for (std::size_t i = 0; i < n; ++i)
            worst_reference = std::max(worst_reference, std::abs(got[i] - ref[i]) / std::max(1.0, std::abs(ref[i])));
    }

    double worst_grid = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<double> x{u(rng) * 2 - 1, u(rng) * 2 - 1};
        const std::vector<double> h{normal(rng), normal(rng)};
        const double alpha = 0.05 + u(rng);
        FeasibleSet set;
        std::vector<double> lo, hi, c;
        double r = 0.0;
        if (trial % 2 == 0) {
            lo = {-u(rng) * 0.9, -u(rng) * 0.9};
            hi = {u(rng) * 0.9, u(rng) * 0.9};
            set = Box{lo, hi};
        } else {
            c = {u(rng) * 0.6 - 0.3, u(rng) * 0.6 - 0.3};
            r = 0.2 + 0.5 * u(rng);
            set = L2Ball{c, r};
        }
        const auto xp = project(set, x);
        auto surrogate = [&](double a, double b) {
            const double da = a - xp[0], db = b - xp[1];
            return (da * da + db * db) / (2 * alpha) + h[0] * da + h[1] * db;
        };
        const auto grid = trial % 2 == 0 ? oracle::grid_argmin_box(surrogate, lo[0], hi[0], lo[1], hi[1], 1e-3)
                                         : oracle::grid_argmin_disc(surrogate, c[0], c[1], r, 5e-4);
        const auto got = minimize_surrogate(xp, h, alpha, set);
        worst_grid = std::max({worst_grid, std::abs(grid[0] - got[0]), std::abs(grid[1] - got[1])});
    }

    Outcome o;
    o.status = exact_mismatch == 0 && worst_reference <= 1e-14 && worst_grid <= 1e-3 ? Status::Pass : Status::Fail;
    o.detail = std::to_string(exact_mismatch) + " of 1000 differ from the projection, reference gap " +
               fmt("%.3g", worst_reference) + ", grid gap " + fmt("%.3g", worst_grid);
    return o;
}

Outcome step_bound() {
    const auto p = make_quad_d10(true);
    RunConfig c;
    c.max_iters = 10'000;
    c.seed = 303;
    std::size_t violations = 0, checks = 0;
    double worst_ratio = 0.0;
    run(p, c, p.default_start(), [&](const IterationView& v) {
        for (std::size_t l = 0; l < p.num_blocks(); ++l) {
            const double step = distance(p.block_view(v.x, l), p.block_view(v.x_prev, l));
            const double bound = 2 * v.alpha * norm(p.block_view(v.h, l));
            ++checks;
            if (step > bound) ++violations;
            if (bound > 0) worst_ratio = std::max(worst_ratio, step / bound);
        }
    });
    Outcome o;
    o.status = violations == 0 && checks == 20'000 ? Status::Pass : Status::Fail;
    o.detail = std::to_string(violations) + " violations in " + std::to_string(checks) +
               " block steps, max step/bound " + fmt("%.3f", worst_ratio);
    return o;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome tracker_convergence() {
    const auto p = make_quad_d10(false);
    RunConfig c;
    c.max_iters = 100'000;
    c.batch_size = 100;
    c.eval_every = 100;
    c.seed = 404;
    const auto r = run(p, c, p.default_start());
    std::vector<double> tail;
    for (const auto& row : r.trace)
        if (row.k > 90'000 && row.tracker_error) tail.push_back(*row.tracker_error);
    const double med = median(tail);
    Outcome o;
    o.status = tail.size() == 100 && med <= 1e-2 ? Status::Pass : Status::Fail;
    o.detail = "median tracker error " + fmt("%.4g", med) + " over the last 10% (batch 100)";
    return o;
}

Outcome convex_gap() {
    const auto p = make_quad_d10(true);
    RunConfig c;
    c.max_iters = 100'000;
    c.eval_every = 100'000;
    c.seed = 505;
    const auto r = run(p, c, p.default_start());
    const double gap = p.true_objective(r.x) - p.optimal_value();
    Outcome o;
    o.status = gap <= 1e-3 ? Status::Pass : Status::Fail;
    o.detail = "F(x) - F* = " + fmt("%.3g", gap) + " at k = 1e5";
    return o;
}

Outcome nonconvex_stationarity() {
    const NonconvexToy p(1.0);
    RunConfig c;
    c.max_iters = 1'000'000;
    c.eval_every = 1'000'000;
    c.batch_size = 4;
    std::uniform_real_distribution<double> start(-2.0, 2.0);
    double worst = 0.0;
    int near_min = 0, near_saddle = 0;
    for (std::uint64_t run_id = 0; run_id < 20; ++run_id) {
        std::mt19937_64 rng(600 + run_id);
        const std::vector<double> x0{start(rng), start(rng)};
        c.seed = 600 + run_id;
        const auto r = run(p, c, x0);
        worst = std::max(worst, stationarity_residual(p, r.x, 1e-3));
        (std::abs(std::abs(r.x[0]) - 1.0) < std::abs(r.x[0]) ? near_min : near_saddle)++;
    }
    Outcome o;
    o.status = worst <= 1e-2 ? Status::Pass : Status::Fail;
    o.detail = "worst residual " + fmt("%.4g", worst) + " over 20 starts (" + std::to_string(near_min) +
               " near a minimum, " + std::to_string(near_saddle) + " near the saddle; sigma 1, batch 4, k = 1e6)";
    return o;
}

std::optional<SvmDataset> load_env_dataset(const char* var, std::optional<std::size_t> features,
                                           std::string& note) {
    const char* path = std::getenv(var);
    if (!path || !*path) {
        note = std::string(var) + " not set";
        return std::nullopt;
    }
    if (!fs::exists(path)) {
        note = std::string(path) + " not found";
        return std::nullopt;
    }
    for (auto mode : {io::LabelMode::Signed, io::LabelMode::OneTwo, io::LabelMode::ZeroOne}) {
        io::ParseOptions opt;
        opt.labels = mode;
        opt.num_features = features;
        opt.name = fs::path(path).filename().string();
        try {
            return io::load_libsvm(path, opt);
        } catch (const ParseError&) {
        }
    }
    note = std::string(path) + " has an unrecognized label convention";
    return std::nullopt;
}

Outcome svm_comparison() {
    // Synthetic part: every method must hit train accuracy 1.0 at some
    // checkpoint (every 100 iterations) up to 2e4 iterations.
    const auto data = make_separable_svm(1000, 20, 0.1, 3);
    const double lambda = 1e-4;
    const SvmProblem p(data, lambda);
    const std::vector<double> x0(20, 1.0);
    RunConfig c;
    c.seed = 7;
    c.schedule = make_schedule(0.6, 0.7, 1.0);
    const AveragingParams avg{0.75, false};

    auto final_point = [&](const std::string& method, std::uint64_t iters) {
        RunConfig rc = c;
        rc.max_iters = iters;
        rc.eval_every = iters;
        if (method == "proposed") return run(p, rc, x0).x;
        if (method == "pegasos") return run_pegasos(p, PegasosParams{lambda}, rc, x0).x;
        if (method == "adam") return run_adam(p, AdamParams{}, rc, x0).x;
        return run_averaged_sca(p, avg, rc, x0).x;
    };

    bool all = true;
    std::string detail;
    for (const std::string method : {"proposed", "pegasos", "adam", "avg-sca"}) {
        std::uint64_t first = 0;
        for (std::uint64_t k = 100; k <= 20'000 && first == 0; k += 100)
            if (svm_accuracy(final_point(method, k), data) == 1.0) first = k;
        const double final_acc = svm_accuracy(final_point(method, 20'000), data);
        all = all && first != 0;
        detail += method + " " + (first ? "first at k=" + std::to_string(first) : std::string("never")) +
                  " (final " + fmt("%.4f", final_acc) + "); ";
    }

    // Real-data part, gated on the file being present.
    std::string note;
    auto cov = load_env_dataset("SPD_COV1_PATH", std::nullopt, note);
    if (!cov) {
        detail += "COV1 comparison SKIPPED (" + note + ")";
    } else {
        const double fraction = std::min(1.0, 5000.0 / static_cast<double>(cov->size()));
        auto sub = io::subsample(*cov, fraction, 0);
        const SvmProblem q(std::move(sub), 1e-6);
        RunConfig rc = c;
        rc.max_iters = 10'000;
        rc.eval_every = 10'000;
        const std::vector<double> ones(q.dim(), 1.0);
        const double prop = q.true_objective(run(q, rc, ones).x);
        const double peg = q.true_objective(run_pegasos(q, PegasosParams{1e-6}, rc, ones).x);
        const double av = q.true_objective(run_averaged_sca(q, avg, rc, ones).x);
        const bool ordered = prop <= peg && prop <= av;
        all = all && ordered;
        detail += "COV1 (" + std::to_string(q.dataset().size()) + " examples) objective at k=1e4: proposed " +
                  fmt("%.6g", prop) + ", pegasos " + fmt("%.6g", peg) + ", avg-sca " + fmt("%.6g", av);
    }
    Outcome o;
    o.status = all ? Status::Pass : Status::Fail;
    o.detail = detail;
    return o;
}

Outcome baseline_units() {
    std::vector<std::string> failed;
    // Pegasos at t = 1: the shrink factor is exactly zero.
    SparseExample ex;
    ex.features.indices = {0, 2};
    ex.features.values = {3.0, 4.0};
    ex.label = 1;
    const std::vector<double> w{1.0, -7.0, 2.5};  // margin 10.75: no hinge term
    if (pegasos_step(w, ex, 0.01, 1) != std::vector<double>{0.0, 0.0, 0.0}) failed.push_back("pegasos t=1");

    // Adam: zero gradient leaves w unchanged at every step.
    AdamState st(3);
    std::vector<double> v = w;
    for (std::uint64_t t = 1; t <= 100; ++t) adam_step(st, v, std::vector<double>(3, 0.0), t, AdamParams{});
    if (v != w) failed.push_back("adam zero gradient");

    // Averaged SCA with rho_k = 1 is the plain iterate.
    const auto p = make_quad_d10(true);
    RunConfig c;
    c.max_iters = 5000;
    c.eval_every = 50;
    c.seed = 808;
    AveragingParams pinned;
    pinned.pin_weight = true;
    const auto a = run(p, c, p.default_start());
    const auto b = run_averaged_sca(p, pinned, c, p.default_start());
    bool same = a.x == b.x && a.trace.size() == b.trace.size();
    for (std::size_t i = 0; same && i < a.trace.size(); ++i)
        same = a.trace[i].objective == b.trace[i].objective && a.trace[i].step_norm == b.trace[i].step_norm;
    if (!same) failed.push_back("averaged SCA pinned weight");

    Outcome o;
    o.status = failed.empty() ? Status::Pass : Status::Fail;
    o.detail = failed.empty() ? "pegasos t=1, adam zero gradient, averaged SCA pinned weight all exact"
                              : "failed: " + failed.front();
    return o;
}

int shell(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism(const fs::path& tool, const fs::path& work) {
    fs::remove_all(work);
    fs::create_directories(work);
    const std::string t = "\"" + tool.string() + "\"";
    const std::string data = (work / "sep.svm").string();
    if (shell(t + " gen separable-svm --m 300 --n 12 --margin 0.1 --seed 5 --out " + data + " > /dev/null") != 0)
        return {Status::Fail, "gen failed"};

    const std::vector<std::pair<std::string, std::string>> runs{
        {"proposed-quad", "--method proposed --synthetic quad-box-d10 --blocks 10 --batch 3 --iters 20000 --seed 11"},
        {"proposed-svm", "--method proposed --data " + data + " --blocks 4 --iters 5000 --seed 12"},
        {"avg-sca", "--method avg-sca --synthetic nonconvex-toy --iters 20000 --seed 13"},
        {"adam", "--method adam --synthetic quad-d10 --iters 5000 --seed 14"},
        {"pegasos", "--method pegasos --data " + data + " --lambda 1e-3 --batch 2 --iters 5000 --seed 15"},
    };
    std::size_t identical = 0;
    std::string detail;
    for (const auto& [name, flags] : runs) {
        const auto first = work / (name + "_first");
        const auto again1 = work / (name + "_w1");
        const auto again8 = work / (name + "_w8");
        bool ok = shell(t + " run " + flags + " --workers 1 --out " + first.string() + " > /dev/null") == 0;
        const std::string m = (first / "manifest.txt").string();
        ok = ok && shell(t + " run --from-manifest " + m + " --workers 1 --out " + again1.string() + " > /dev/null") == 0;
        ok = ok && shell(t + " run --from-manifest " + m + " --workers 8 --out " + again8.string() + " > /dev/null") == 0;
        const auto bytes = slurp(first / "trace.csv");
        ok = ok && !bytes.empty() && bytes == slurp(again1 / "trace.csv") && bytes == slurp(again8 / "trace.csv");
        if (ok) ++identical;
        else detail += name + " differs; ";
    }
    Outcome o;
    o.status = identical == runs.size() ? Status::Pass : Status::Fail;
    o.detail = detail + std::to_string(identical) + " of " + std::to_string(runs.size()) +
               " manifests reproduce bitwise at 1 and 8 workers";
    return o;
}

Outcome parser_suite() {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> nnz(0, 15), gap(1, 30);
    std::normal_distribution<double> value(0.0, 10.0);

    // 1000 generated lines, written the way a LIBSVM tool would.
    std::ostringstream text;
    std::vector<SparseExample> expected;
    for (int i = 0; i < 1000; ++i) {
        SparseExample ex;
        ex.label = rng() % 2 ? 1 : -1;
        text << (ex.label > 0 ? "+1" : "-1");
        std::uint32_t idx = 0;
        for (int j = nnz(rng); j > 0; --j) {
            idx += gap(rng);
            const double v = value(rng);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            text << ' ' << idx << ':' << buf;
            ex.features.indices.push_back(idx - 1);
            ex.features.values.push_back(v);
        }
        text << '\n';
        expected.push_back(ex);
    }
    bool round_trip = false;
    try {
        const auto parsed = io::parse_libsvm(text.str());
        std::ostringstream again;
        io::write_libsvm(again, parsed);
        io::ParseOptions opt;
        opt.num_features = parsed.num_features;
        round_trip = parsed.examples == expected && io::parse_libsvm(again.str(), opt) == parsed;
    } catch (const std::exception&) {
    }

    std::size_t unstructured = 0;
    for (int trial = 0; trial < 10'000; ++trial) {
        std::string s(rng() % 64, '\0');
        for (char& ch : s) ch = static_cast<char>(rng() % 256);
        try {
            io::parse_libsvm(s).validate();
        } catch (const ParseError&) {
        } catch (const InvalidArgument&) {
        } catch (...) {
            ++unstructured;
        }
    }

    bool sparsity_ok = true;
    std::string sparsity;
    struct Gate {
        const char* var;
        const char* name;
        double target;
        std::optional<std::size_t> features;
    };
    for (const Gate& g : {Gate{"SPD_COV1_PATH", "COV1", 22.22, std::nullopt}, Gate{"SPD_RCV1_PATH", "RCV1", 0.16, 47236}}) {
        std::string note;
        const auto ds = load_env_dataset(g.var, g.features, note);
        if (!ds) {
            sparsity += std::string("; ") + g.name + " sparsity SKIPPED (" + note + ")";
            continue;
        }
        const double d = ds->density_percent();
        sparsity_ok = sparsity_ok && std::abs(d - g.target) <= 0.5;
        sparsity += std::string("; ") + g.name + " sparsity " + fmt("%.2f", d) + "% vs " + fmt("%.2f", g.target) + "%";
    }

    Outcome o;
    o.status = round_trip && unstructured == 0 && sparsity_ok ? Status::Pass : Status::Fail;
    o.detail = std::string("round trip ") + (round_trip ? "exact" : "MISMATCH") + ", " +
               std::to_string(unstructured) + " unstructured failures in 10000 random inputs" + sparsity;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path tool = argc > 1 ? fs::path(argv[1]) : fs::path(SPD_TOOL_PATH);
    const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "spd_acceptance";

    struct Criterion {
        int id;
        const char* name;
        double budget;  // seconds; 0 means none
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "explicit weights and tracker recursion", 5, weights_and_tracker},
        {2, "surrogate minimizer is the projection", 10, surrogate_identity},
        {3, "step bound at every iteration", 0, step_bound},
        {4, "tracker converges to the true gradient", 30, tracker_convergence},
        {5, "convex optimality gap", 30, convex_gap},
        {6, "nonconvex stationarity from 20 starts", 60, nonconvex_stationarity},
        {7, "SVM desk-scale comparison", 120, svm_comparison},
        {8, "baseline unit checks", 0, baseline_units},
        {9, "bitwise reproducible runs", 0, [&] { return determinism(tool, work); }},
        {10, "LIBSVM parser", 0, parser_suite},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {Status::Fail, std::string("exception: ") + e.what()};
        }
        if (c.budget > 0) o = within_budget(o, seconds_since(t0), c.budget);
        else o.detail += "; " + fmt("%.2f", seconds_since(t0)) + " s";
        const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Skip ? "SKIP" : "FAIL";
        if (o.status == Status::Fail) ++failures;
        std::printf("[%s] %2d %s: %s\n", tag, c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
