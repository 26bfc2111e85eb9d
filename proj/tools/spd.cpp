// spd: run, compare and generate problems for the stochastic parallel
// decomposition solver.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spd/baselines.hpp"
#include "spd/core.hpp"
#include "spd/error.hpp"
#include "spd/io.hpp"
#include "spd/problems/nonconvex.hpp"
#include "spd/problems/quadratic.hpp"
#include "spd/problems/svm.hpp"

namespace fs = std::filesystem;
namespace io = spd::io;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kMethods{"proposed", "pegasos", "adam", "avg-sca"};

struct Options {
    std::string method = "proposed";

    std::string data;
    std::string test_data;
    std::string problem_file;
    std::string synthetic;
    std::size_t features = 0;
    std::string label_mode = "signed";
    double subsample = 1.0;
    double lambda = 0.0;  // 0: dataset default
    std::size_t blocks = 0;
    double noise = -1.0;  // < 0: problem default

    double rho_omega = 0.6;
    double rho_alpha = 0.9;
    double alpha_scale = 1.0;
    std::uint64_t omega_offset = 0;
    std::uint64_t alpha_offset = 0;
    double rho_avg = 0.95;
    double adam_lr = 1e-3;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;

    std::uint64_t seed = 0;
    std::uint64_t iters = 1000;
    std::size_t batch = 1;
    std::uint64_t eval_every = 100;
    double step_tol = 0.0;
    std::string init = "auto";
    bool record_timing = false;

    // Not part of the reproducible configuration.
    std::size_t workers = 0;
    std::string out;
    std::size_t log_indices = 0;
    std::string from_manifest;  // consumed by expand_manifest before parsing
};

void add_problem_options(CLI::App& cmd, Options& o) {
    cmd.add_option("--data", o.data, "Training set, LIBSVM format")->check(CLI::ExistingFile);
    cmd.add_option("--test-data", o.test_data, "Test set, LIBSVM format")->check(CLI::ExistingFile);
    cmd.add_option("--problem", o.problem_file, "Problem spec written by 'gen quadratic|nonconvex-toy'")
        ->check(CLI::ExistingFile);
    cmd.add_option("--synthetic", o.synthetic, "Built-in problem")
        ->check(CLI::IsMember({"quad-d10", "quad-box-d10", "nonconvex-toy"}));
    cmd.add_option("--features", o.features, "Feature count (default: largest index in the data)");
    cmd.add_option("--label-mode", o.label_mode, "Label convention of the data")
        ->check(CLI::IsMember({"signed", "zero-one", "one-two"}));
    cmd.add_option("--subsample", o.subsample, "Keep this fraction of the training set")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--lambda", o.lambda, "SVM regularization (default: 1e-6 cov, 1e-4 rcv1 and others)")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--blocks", o.blocks, "Number of variable blocks");
    cmd.add_option("--noise", o.noise, "Noise standard deviation for --synthetic nonconvex-toy");

    cmd.add_option("--rho-omega", o.rho_omega, "Tracker weight decay exponent")->capture_default_str();
    cmd.add_option("--rho-alpha", o.rho_alpha, "Step size decay exponent")->capture_default_str();
    cmd.add_option("--alpha-scale", o.alpha_scale, "Step size scale")->capture_default_str();
    cmd.add_option("--omega-offset", o.omega_offset, "Index offset of the tracker weights");
    cmd.add_option("--alpha-offset", o.alpha_offset, "Index offset of the step sizes");
    cmd.add_option("--rho-avg", o.rho_avg, "Averaging exponent of avg-sca")->capture_default_str();
    cmd.add_option("--adam-lr", o.adam_lr, "Adam learning rate")->capture_default_str();
    cmd.add_option("--adam-beta1", o.adam_beta1)->capture_default_str();
    cmd.add_option("--adam-beta2", o.adam_beta2)->capture_default_str();
    cmd.add_option("--adam-eps", o.adam_eps)->capture_default_str();

    cmd.add_option("--seed", o.seed, "Sample stream seed")->capture_default_str();
    cmd.add_option("--iters", o.iters, "Iterations")->capture_default_str();
    cmd.add_option("--batch", o.batch, "Samples per iteration")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--eval-every", o.eval_every, "Trace cadence in iterations")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--step-tol", o.step_tol, "Stop when |x^k - x^{k-1}| / alpha_k falls below this");
    cmd.add_option("--init", o.init, "Start point: auto (ones for SVM, centroid otherwise), zeros, ones, centroid")
        ->check(CLI::IsMember({"auto", "zeros", "ones", "centroid"}));
    cmd.add_flag("--record-timing", o.record_timing, "Write elapsed_ns to the trace (makes it non-reproducible)");

    cmd.add_option("--workers", o.workers, "Block worker threads (default: available parallelism)");
    cmd.add_option("--out", o.out, "Output directory (default: $SPD_OUT_DIR or ./spd_out)");
    cmd.add_option("--log-indices", o.log_indices, "Write the first N drawn sample indices per method");
    cmd.add_option("--from-manifest", o.from_manifest, "Re-run the configuration recorded in a manifest");
}

// ---------------------------------------------------------------------------
// Manifest <-> options

io::Manifest config_entries(const std::string& subcommand, const Options& o) {
    using io::format_double;
    io::Manifest m{{"config.subcommand", subcommand}};
    auto put = [&](const std::string& key, const std::string& value) {
        if (!value.empty()) m.emplace_back("config." + key, value);
    };
    if (subcommand == "run") put("method", o.method);
    put("data", o.data);
    put("test-data", o.test_data);
    put("problem", o.problem_file);
    put("synthetic", o.synthetic);
    put("features", std::to_string(o.features));
    put("label-mode", o.label_mode);
    put("subsample", format_double(o.subsample));
    put("lambda", format_double(o.lambda));
    put("blocks", std::to_string(o.blocks));
    put("noise", format_double(o.noise));
    put("rho-omega", format_double(o.rho_omega));
    put("rho-alpha", format_double(o.rho_alpha));
    put("alpha-scale", format_double(o.alpha_scale));
    put("omega-offset", std::to_string(o.omega_offset));
    put("alpha-offset", std::to_string(o.alpha_offset));
    put("rho-avg", format_double(o.rho_avg));
    put("adam-lr", format_double(o.adam_lr));
    put("adam-beta1", format_double(o.adam_beta1));
    put("adam-beta2", format_double(o.adam_beta2));
    put("adam-eps", format_double(o.adam_eps));
    put("seed", std::to_string(o.seed));
    put("iters", std::to_string(o.iters));
    put("batch", std::to_string(o.batch));
    put("eval-every", std::to_string(o.eval_every));
    put("step-tol", format_double(o.step_tol));
    put("init", o.init);
    if (o.record_timing) put("record-timing", "1");
    return m;
}

// Rewrites "<sub> --from-manifest FILE rest..." into "<sub> <recorded flags> rest...".
// Later flags win, so anything given on the command line overrides the manifest.
std::vector<std::string> expand_manifest(std::vector<std::string> args) {
    auto it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
        return a == "--from-manifest" || a.rfind("--from-manifest=", 0) == 0;
    });
    if (it == args.end()) return args;
    std::string path;
    if (*it == "--from-manifest") {
        if (std::next(it) == args.end()) throw UsageError("--from-manifest: missing file name");
        path = *std::next(it);
        args.erase(it, it + 2);
    } else {
        path = it->substr(std::string("--from-manifest=").size());
        args.erase(it);
    }
    if (!fs::exists(path)) throw UsageError("--from-manifest: file does not exist: " + path);
    const auto manifest = io::read_manifest(fs::path(path));
    const auto sub = io::manifest_value(manifest, "config.subcommand");
    if (!sub) throw UsageError("--from-manifest: " + path + " records no configuration");
    if (args.empty() || args.front() != *sub)
        throw UsageError("--from-manifest: manifest was written by '" + *sub + "'");

    std::vector<std::string> out{*sub};
    for (const auto& [key, value] : manifest) {
        if (key.rfind("config.", 0) != 0 || key == "config.subcommand") continue;
        out.push_back("--" + key.substr(7));
        if (key != "config.record-timing") out.push_back(value);
    }
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
}

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

// ---------------------------------------------------------------------------
// Problem setup

struct Setup {
    std::unique_ptr<spd::Problem> problem;
    const spd::SvmProblem* svm = nullptr;
    std::optional<spd::SvmDataset> test;
    std::string description;
    std::string checksum;
    double lambda = 0.0;
};

spd::io::LabelMode label_mode(const std::string& s) {
    if (s == "zero-one") return spd::io::LabelMode::ZeroOne;
    if (s == "one-two") return spd::io::LabelMode::OneTwo;
    return spd::io::LabelMode::Signed;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& key) {
    std::vector<double> v;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        const double d = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') throw UsageError("--problem: malformed number in '" + key + "'");
        v.push_back(d);
    }
    return v;
}

std::unique_ptr<spd::Problem> load_problem_spec(const std::string& path, const Options& o) {
    const auto m = io::read_manifest(fs::path(path));
    auto get = [&](const std::string& key) {
        const auto v = io::manifest_value(m, key);
        if (!v) throw UsageError("--problem: " + path + " lacks '" + key + "'");
        return *v;
    };
    const auto kind = get("kind");
    if (kind == "nonconvex-toy") return std::make_unique<spd::NonconvexToy>(std::stod(get("noise_stddev")));
    if (kind != "quadratic") throw UsageError("--problem: unknown kind '" + kind + "'");

    spd::QuadraticSpec spec;
    spec.target = parse_doubles(get("target"), "target");
    spec.curvature = parse_doubles(get("curvature"), "curvature");
    spec.noise_stddev = std::stod(get("noise_stddev"));
    const std::size_t blocks = o.blocks ? o.blocks : std::stoul(get("blocks"));
    const auto lower = io::manifest_value(m, "box_lower");
    const auto upper = io::manifest_value(m, "box_upper");
    for (std::size_t size : spd::even_partition(spec.target.size(), blocks)) {
        if (lower && upper)
            spec.blocks.push_back(spd::BlockSpec::box(size, std::stod(*lower), std::stod(*upper)));
        else
            spec.blocks.push_back(spd::BlockSpec::unconstrained(size));
    }
    return std::make_unique<spd::QuadraticProblem>(std::move(spec));
}

Setup make_setup(const Options& o) {
    const int sources = !o.data.empty() + !o.problem_file.empty() + !o.synthetic.empty();
    if (sources == 0) throw UsageError("one of --data, --problem or --synthetic is required");
    if (sources > 1) throw UsageError("--data, --problem and --synthetic are mutually exclusive");
    if (!o.test_data.empty() && o.data.empty()) throw UsageError("--test-data needs --data");

    Setup s;
    if (!o.data.empty()) {
        io::ParseOptions popt;
        popt.labels = label_mode(o.label_mode);
        if (o.features) popt.num_features = o.features;
        popt.name = fs::path(o.data).filename().string();
        auto train = io::load_libsvm(o.data, popt);
        if (o.subsample < 1.0) train = io::subsample(train, o.subsample, o.seed);
        if (!o.test_data.empty()) {
            popt.num_features = train.num_features;
            popt.name = fs::path(o.test_data).filename().string();
            s.test = io::load_libsvm(o.test_data, popt);
        }
        s.lambda = o.lambda > 0.0 ? o.lambda : spd::default_lambda(fs::path(o.data).filename().string()).value_or(1e-4);
        s.description = "svm:" + o.data;
        s.checksum = io::file_checksum(o.data);
        auto svm = std::make_unique<spd::SvmProblem>(std::move(train), s.lambda, o.blocks ? o.blocks : 1);
        s.svm = svm.get();
        s.problem = std::move(svm);
    } else if (!o.problem_file.empty()) {
        s.problem = load_problem_spec(o.problem_file, o);
        s.description = "spec:" + o.problem_file;
        s.checksum = io::file_checksum(o.problem_file);
    } else if (o.synthetic == "nonconvex-toy") {
        s.problem = std::make_unique<spd::NonconvexToy>(o.noise >= 0.0 ? o.noise : 1.0);
        s.description = "synthetic:nonconvex-toy";
    } else {
        s.problem = std::make_unique<spd::QuadraticProblem>(
            spd::make_quad_d10(o.synthetic == "quad-box-d10", o.blocks ? o.blocks : 2));
        s.description = "synthetic:" + o.synthetic;
    }
    return s;
}

std::vector<double> start_point(const Setup& s, const Options& o) {
    const std::size_t d = s.problem->dim();
    if (o.init == "zeros") return std::vector<double>(d, 0.0);
    if (o.init == "ones" || (o.init == "auto" && s.svm)) return std::vector<double>(d, 1.0);
    return s.problem->default_start();
}

spd::RunConfig run_config(const Options& o) {
    spd::RunConfig c;
    c.batch_size = o.batch;
    c.max_iters = o.iters;
    c.seed = o.seed;
    c.schedule = spd::make_schedule(o.rho_omega, o.rho_alpha, o.alpha_scale, o.omega_offset, o.alpha_offset);
    c.eval_every = o.eval_every;
    if (o.step_tol > 0.0) c.termination = spd::StepNormBelow{o.step_tol};
    c.workers = o.workers;
    spd::validate(c);
    return c;
}

// ---------------------------------------------------------------------------
// Running

struct MethodResult {
    std::string method;
    spd::RunResult result;
    std::optional<double> objective;
    std::optional<double> train_accuracy;
    std::optional<double> test_accuracy;
    double cpu_seconds = 0.0;
    double wall_seconds = 0.0;
    std::vector<std::uint64_t> indices;
};

MethodResult run_method(const std::string& method, const Setup& s, const Options& o, spd::RunConfig config) {
    MethodResult r;
    r.method = method;
    if (o.log_indices) {
        config.on_batch = [&r, n = o.log_indices](std::uint64_t, std::span<const spd::SampleToken> batch) {
            for (const auto& t : batch)
                if (r.indices.size() < n) r.indices.push_back(t.index);
        };
    }
    const auto x0 = start_point(s, o);
    const auto wall0 = std::chrono::steady_clock::now();
    const std::clock_t cpu0 = std::clock();
    if (method == "proposed") {
        r.result = spd::run(*s.problem, config, x0);
    } else if (method == "pegasos") {
        if (!s.svm) throw UsageError("--method pegasos needs an SVM dataset (--data)");
        r.result = spd::run_pegasos(*s.svm, spd::PegasosParams{s.lambda}, config, x0);
    } else if (method == "adam") {
        r.result = spd::run_adam(*s.problem, spd::AdamParams{o.adam_lr, o.adam_beta1, o.adam_beta2, o.adam_eps},
                                 config, x0);
    } else {
        r.result = spd::run_averaged_sca(*s.problem, spd::AveragingParams{o.rho_avg, false}, config, x0);
    }
    r.cpu_seconds = static_cast<double>(std::clock() - cpu0) / CLOCKS_PER_SEC;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();

    if (!o.record_timing)
        for (auto& row : r.result.trace) row.elapsed_ns = 0;
    if (s.problem->has_true_objective()) r.objective = s.problem->true_objective(r.result.x);
    if (s.svm) {
        r.train_accuracy = spd::svm_accuracy(r.result.x, s.svm->dataset());
        if (s.test) r.test_accuracy = spd::svm_accuracy(r.result.x, *s.test);
    }
    return r;
}

std::string show(const std::optional<double>& v) { return v ? io::format_double(*v) : "n/a"; }

fs::path output_dir(const Options& o) {
    fs::path dir = o.out;
    if (dir.empty()) {
        const char* env = std::getenv("SPD_OUT_DIR");
        dir = (env && *env) ? env : "spd_out";
    }
    fs::create_directories(dir);
    return dir;
}

void write_indices(const fs::path& path, const std::vector<std::uint64_t>& indices) {
    std::ofstream out(path);
    if (!out) throw spd::IoError("cannot open '" + path.string() + "' for writing");
    for (auto i : indices) out << i << '\n';
}

void append_common(io::Manifest& m, const Setup& s, const Options& o) {
    m.emplace_back("problem", s.description);
    m.emplace_back("dimension", std::to_string(s.problem->dim()));
    m.emplace_back("blocks", std::to_string(s.problem->num_blocks()));
    if (!s.checksum.empty()) m.emplace_back("dataset_checksum", s.checksum);
    if (s.svm) {
        m.emplace_back("examples", std::to_string(s.svm->dataset().size()));
        m.emplace_back("lambda", io::format_double(s.lambda));
    }
    m.emplace_back("seed", std::to_string(o.seed));
    m.emplace_back("batch_size", std::to_string(o.batch));
    m.emplace_back("workers", std::to_string(spd::resolve_workers(o.workers)));
}

void append_result(io::Manifest& m, const std::string& prefix, const MethodResult& r, const Options& o) {
    m.emplace_back(prefix + "iterations", std::to_string(r.result.iterations));
    m.emplace_back(prefix + "samples_visited", std::to_string(r.result.iterations * o.batch));
    m.emplace_back(prefix + "final_objective", show(r.objective));
    m.emplace_back(prefix + "train_accuracy", show(r.train_accuracy));
    m.emplace_back(prefix + "test_accuracy", show(r.test_accuracy));
    m.emplace_back(prefix + "cpu_seconds", io::format_double(r.cpu_seconds));
    m.emplace_back(prefix + "wall_seconds", io::format_double(r.wall_seconds));
}

int cmd_run(const Options& o, const std::string& cmdline) {
    const auto setup = make_setup(o);
    const auto config = run_config(o);
    const auto dir = output_dir(o);

    const auto r = run_method(o.method, setup, o, config);
    const auto trace_path = dir / "trace.csv";
    io::write_trace(trace_path, r.result.trace);
    if (o.log_indices) write_indices(dir / "indices.txt", r.indices);

    io::Manifest m{{"command", cmdline}};
    const auto cfg = config_entries("run", o);
    m.insert(m.end(), cfg.begin(), cfg.end());
    append_common(m, setup, o);
    m.emplace_back("method", o.method);
    append_result(m, "", r, o);
    m.emplace_back("trace", trace_path.filename().string());
    m.emplace_back("trace_checksum", io::file_checksum(trace_path));
    io::write_manifest(dir / "manifest.txt", m);

    std::cout << "method: " << o.method << '\n'
              << "iterations: " << r.result.iterations << '\n'
              << "final objective: " << show(r.objective) << '\n'
              << "train accuracy: " << show(r.train_accuracy) << '\n'
              << "test accuracy: " << show(r.test_accuracy) << '\n'
              << "trace: " << trace_path.string() << '\n';
    return 0;
}

int cmd_compare(const Options& o, const std::string& cmdline) {
    const auto setup = make_setup(o);
    const auto config = run_config(o);
    const auto dir = output_dir(o);

    io::Manifest m{{"command", cmdline}};
    const auto cfg = config_entries("compare", o);
    m.insert(m.end(), cfg.begin(), cfg.end());
    append_common(m, setup, o);

    std::ostringstream table;
    table << "method,final_objective,train_accuracy,test_accuracy,cpu_seconds\n";
    std::printf("%-10s %24s %10s %10s %12s\n", "method", "final objective", "train acc", "test acc", "cpu s");
    for (const auto& method : kMethods) {
        if (method == "pegasos" && !setup.svm) {
            table << method << ",n/a,n/a,n/a,n/a\n";
            std::printf("%-10s %24s %10s %10s %12s\n", method.c_str(), "n/a", "n/a", "n/a", "n/a");
            continue;
        }
        const auto r = run_method(method, setup, o, config);
        const auto trace_path = dir / ("trace_" + method + ".csv");
        io::write_trace(trace_path, r.result.trace);
        if (o.log_indices) write_indices(dir / ("indices_" + method + ".txt"), r.indices);
        append_result(m, method + ".", r, o);
        m.emplace_back(method + ".trace_checksum", io::file_checksum(trace_path));

        table << method << ',' << show(r.objective) << ',' << show(r.train_accuracy) << ','
              << show(r.test_accuracy) << ',' << io::format_double(r.cpu_seconds) << '\n';
        auto fixed = [](const std::optional<double>& v, const char* fmt) {
            if (!v) return std::string("n/a");
            char buf[64];
            std::snprintf(buf, sizeof buf, fmt, *v);
            return std::string(buf);
        };
        std::printf("%-10s %24s %10s %10s %12.3f\n", method.c_str(), fixed(r.objective, "%.12g").c_str(),
                    fixed(r.train_accuracy, "%.4f").c_str(), fixed(r.test_accuracy, "%.4f").c_str(),
                    r.cpu_seconds);
    }
    {
        std::ofstream out(dir / "summary.csv");
        out << table.str();
        if (!out) throw spd::IoError("write to '" + (dir / "summary.csv").string() + "' failed");
    }
    io::write_manifest(dir / "manifest.txt", m);
    return 0;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
    std::size_t m = 1000;
    std::size_t n = 20;
    double margin = 0.1;
    std::uint64_t seed = 0;
    std::size_t blocks = 2;
    double noise = 1.0;
    std::optional<double> box;
    std::string out;
};

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + io::format_double(v[i]);
    return s;
}

int cmd_gen(const std::string& kind, const GenOptions& g) {
    if (g.out.empty()) throw UsageError("--out is required");
    const fs::path out = g.out;
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    if (kind == "separable-svm") {
        if (g.m == 0) throw UsageError("--m must be positive");
        if (g.n == 0) throw UsageError("--n must be positive");
        if (!(g.margin >= 0.0 && g.margin < 1.0)) throw UsageError("--margin must lie in [0, 1)");
        auto ds = spd::make_separable_svm(g.m, g.n, g.margin, g.seed);
        io::save_libsvm(out, ds);
    } else if (kind == "quadratic") {
        if (g.n == 0) throw UsageError("--n must be positive");
        if (g.blocks == 0 || g.blocks > g.n) throw UsageError("--blocks must lie in [1, n]");
        if (g.noise < 0.0) throw UsageError("--noise must be non-negative");
        std::mt19937_64 rng(g.seed);
        std::uniform_real_distribution<double> target(-1.0, 1.0), curvature(0.5, 2.0);
        std::vector<double> mu(g.n), c(g.n);
        for (std::size_t j = 0; j < g.n; ++j) {
            mu[j] = target(rng);
            c[j] = curvature(rng);
        }
        io::Manifest m{{"kind", "quadratic"}, {"dim", std::to_string(g.n)}, {"target", join(mu)},
                       {"curvature", join(c)},  {"noise_stddev", io::format_double(g.noise)},
                       {"blocks", std::to_string(g.blocks)}};
        if (g.box) {
            if (!(*g.box > 0.0)) throw UsageError("--box must be positive");
            m.emplace_back("box_lower", io::format_double(-*g.box));
            m.emplace_back("box_upper", io::format_double(*g.box));
        }
        io::write_manifest(out, m);
    } else {
        if (g.noise < 0.0) throw UsageError("--noise must be non-negative");
        io::write_manifest(out, {{"kind", "nonconvex-toy"}, {"noise_stddev", io::format_double(g.noise)}});
    }
    std::cout << "wrote " << out.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic parallel decomposition solver with gradient tracking"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Options run_opts;
    auto* run = app.add_subcommand("run", "Run one optimizer on one problem");
    run->add_option("--method", run_opts.method, "Optimizer")->check(CLI::IsMember(kMethods))->capture_default_str();
    add_problem_options(*run, run_opts);

    Options cmp_opts;
    auto* cmp = app.add_subcommand("compare", "Run all optimizers on the same sample stream");
    add_problem_options(*cmp, cmp_opts);

    auto* gen = app.add_subcommand("gen", "Write a synthetic problem");
    gen->require_subcommand(1);
    std::string gen_kind;
    GenOptions gen_opts;
    for (const char* kind : {"separable-svm", "quadratic", "nonconvex-toy"}) {
        auto* g = gen->add_subcommand(kind);
        g->callback([&gen_kind, kind] { gen_kind = kind; });
        g->add_option("--out", gen_opts.out, "Output file")->required();
        g->add_option("--seed", gen_opts.seed);
        if (std::string(kind) == "separable-svm") {
            g->add_option("--m", gen_opts.m, "Examples")->capture_default_str();
            g->add_option("--n", gen_opts.n, "Features")->capture_default_str();
            g->add_option("--margin", gen_opts.margin, "Minimum |<w*, x>|")->capture_default_str();
        } else if (std::string(kind) == "quadratic") {
            g->add_option("--n", gen_opts.n, "Dimension")->capture_default_str();
            g->add_option("--blocks", gen_opts.blocks)->capture_default_str();
            g->add_option("--noise", gen_opts.noise)->capture_default_str();
            g->add_option("--box", gen_opts.box, "Confine every coordinate to [-box, box]");
        } else {
            g->add_option("--noise", gen_opts.noise)->capture_default_str();
        }
    }

    const std::string cmdline = command_line(argc, argv);
    try {
        auto args = expand_manifest(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    try {
        if (run->parsed()) return cmd_run(run_opts, cmdline);
        if (cmp->parsed()) return cmd_compare(cmp_opts, cmdline);
        return cmd_gen(gen_kind, gen_opts);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const spd::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
