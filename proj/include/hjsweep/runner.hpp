#ifndef HJSWEEP_RUNNER_HPP
#define HJSWEEP_RUNNER_HPP

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hjsweep/report.hpp"
#include "hjsweep/solver.hpp"

namespace hjsweep {

/// A batch of solves over a mesh ladder, plus output housekeeping.
struct RunConfig {
    const ProblemSpec* problem = nullptr;
    std::vector<int> ns;
    SchemeKind scheme = SchemeKind::FEFSM;
    double cfl = 0.0;               // <= 0: scheme default
    ReconMode mode = ReconMode::Hweno;
    double tol = 1e-14;
    long max_iter = 100000;
    int checkpoint_stride = 4;
    std::string out_dir = "results";
    int workers = 1;

    void validate() const {
        if (!problem) throw std::invalid_argument("run: no problem selected");
        if (ns.empty()) throw std::invalid_argument("run: empty mesh ladder");
        int prev = 0;
        for (int n : ns) {
            if (n < 20) throw std::invalid_argument("run: mesh sizes must be at least 20");
            if (n <= prev) throw std::invalid_argument("run: mesh ladder must be strictly increasing");
            prev = n;
        }
    }

    SchemeConfig scheme_config() const {
        SchemeConfig c;
        c.scheme = scheme;
        c.cfl = cfl > 0.0 ? cfl : default_cfl(scheme);
        c.reconstruction = mode;
        c.tol = tol;
        c.max_iter = max_iter;
        c.checkpoint_stride = checkpoint_stride;
        return c;
    }
};

inline int env_worker_count() {
    if (const char* env = std::getenv("HJSWEEP_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    return 1;
}

namespace detail {

struct TimedSolve {
    SolveResult result;
    std::optional<MaskedError> error;
    double seconds = 0.0;
};

inline TimedSolve timed_solve(const ProblemSpec& spec, int n, const SchemeConfig& cfg) {
    TimedSolve t{SolveResult{SolutionState(Grid2D(20, 20, {0, 1, 0, 1})), {}, SolveStatus::NotConverged},
                 std::nullopt, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    DiscreteProblem dp(spec, n);
    t.result = solve_on_grid(dp, cfg);
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    t.result.stats.seconds = t.seconds;
    if (dp.has_exact()) t.error = masked_error(t.result.state.phi, dp);
    return t;
}

inline void run_parallel(int workers, int jobs, const std::function<void(int)>& body) {
    if (workers <= 1 || jobs <= 1) {
        for (int k = 0; k < jobs; ++k) body(k);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    const int nthreads = std::min(workers, jobs);
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                const int k = next.fetch_add(1);
                if (k >= jobs) return;
                body(k);
            }
        });
    for (auto& th : pool) th.join();
}

inline std::string run_tag(const RunConfig& cfg) {
    std::ostringstream tag;
    tag << cfg.problem->name << '_' << scheme_name(cfg.scheme) << '_'
        << (cfg.mode == ReconMode::Hybrid ? "hybrid" : "hweno");
    return tag.str();
}

inline nlohmann::json config_json(const RunConfig& cfg, const SchemeConfig& sc) {
    nlohmann::json j;
    j["problem"] = cfg.problem->name;
    j["ns"] = cfg.ns;
    j["scheme"] = scheme_name(cfg.scheme);
    j["cfl"] = sc.cfl;
    j["mode"] = cfg.mode == ReconMode::Hybrid ? "hybrid" : "hweno";
    j["tol"] = sc.tol;
    j["max_iter"] = sc.max_iter;
    j["checkpoint_stride"] = sc.checkpoint_stride;
    return j;
}

inline void write_manifest(const std::string& path, nlohmann::json j,
                           const std::vector<std::string>& outputs) {
    j["outputs"] = outputs;
    j["content_hash"] = content_hash(j.dump());
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

} // namespace detail

/// Solves the ladder, writes one CSV table plus per-mesh history files and a
/// manifest, and prints the table. Exit code: 0 on full success, 2 if any
/// mesh failed to converge, 3 if any diverged (partial outputs kept).
inline int run_convergence_study(const RunConfig& cfg) {
    cfg.validate();
    const SchemeConfig sc = cfg.scheme_config();
    std::filesystem::create_directories(cfg.out_dir);
    const std::string tag = detail::run_tag(cfg);

    std::vector<detail::TimedSolve> solves(cfg.ns.size());
    detail::run_parallel(cfg.workers, static_cast<int>(cfg.ns.size()),
                         [&](int k) { solves[k] = detail::timed_solve(*cfg.problem, cfg.ns[k], sc); });

    std::vector<MeshResult> rows;
    std::vector<std::string> outputs;
    bool any_nc = false, any_div = false;
    for (std::size_t k = 0; k < cfg.ns.size(); ++k) {
        const auto& s = solves[k];
        MeshResult r;
        r.n = cfg.ns[k];
        r.iterations = s.result.stats.iterations;
        r.seconds = s.seconds;
        r.status = s.result.status;
        if (s.error) {
            r.has_error = true;
            r.l1 = s.error->l1;
            r.linf = s.error->linf;
            if (k > 0 && solves[k - 1].error) {
                const double ratio = std::log(double(cfg.ns[k]) / cfg.ns[k - 1]);
                r.order_l1 = std::log(solves[k - 1].error->l1 / r.l1) / ratio;
                r.order_linf = std::log(solves[k - 1].error->linf / r.linf) / ratio;
            }
        }
        rows.push_back(r);
        any_nc |= s.result.status == SolveStatus::NotConverged;
        any_div |= s.result.status == SolveStatus::Diverged;

        const std::string hist = cfg.out_dir + "/" + tag + "_n" + std::to_string(r.n) + "_history.jsonl";
        write_history_jsonl(hist, s.result.stats);
        outputs.push_back(hist);
    }
    const std::string csv = cfg.out_dir + "/" + tag + ".csv";
    write_convergence_csv(csv, rows);
    outputs.push_back(csv);
    detail::write_manifest(cfg.out_dir + "/" + tag + "_manifest.json",
                           detail::config_json(cfg, sc), outputs);

    std::printf("%-22s %5s %10s %7s %10s %7s %7s %9s  %s\n", tag.c_str(), "n", "L1", "ord",
                "Linf", "ord", "iter", "sec", "status");
    for (const auto& r : rows)
        std::printf("%-22s %5d %10s %7s %10s %7s %7ld %9.2f  %s\n", "", r.n,
                    r.has_error ? detail::sci3(r.l1).c_str() : "-",
                    detail::fixed2(r.order_l1).empty() ? "-" : detail::fixed2(r.order_l1).c_str(),
                    r.has_error ? detail::sci3(r.linf).c_str() : "-",
                    detail::fixed2(r.order_linf).empty() ? "-" : detail::fixed2(r.order_linf).c_str(),
                    r.iterations, r.seconds, status_name(r.status));

    if (any_div) return 3;
    if (any_nc) return 2;
    return 0;
}

/// Runs one mesh at each CFL value, writes per-value histories and a summary
/// naming the fastest converging value. Individual failures are recorded in
/// the summary and do not abort the scan.
inline int run_cfl_scan(const RunConfig& cfg, const std::vector<double>& cfls) {
    cfg.validate();
    if (cfg.ns.size() != 1)
        throw std::invalid_argument("scan-cfl: give exactly one mesh size");
    if (cfls.empty()) throw std::invalid_argument("scan-cfl: empty CFL list");
    std::filesystem::create_directories(cfg.out_dir);
    const int n = cfg.ns.front();
    const std::string tag = detail::run_tag(cfg) + "_n" + std::to_string(n) + "_cfl";

    std::vector<detail::TimedSolve> solves(cfls.size());
    detail::run_parallel(cfg.workers, static_cast<int>(cfls.size()), [&](int k) {
        SchemeConfig sc = cfg.scheme_config();
        sc.cfl = cfls[k];
        solves[k] = detail::timed_solve(*cfg.problem, n, sc);
    });

    int fastest = -1;
    for (std::size_t k = 0; k < cfls.size(); ++k)
        if (solves[k].result.status == SolveStatus::Converged &&
            (fastest < 0 || solves[k].seconds < solves[fastest].seconds))
            fastest = static_cast<int>(k);

    std::vector<std::string> outputs;
    const std::string summary_path = cfg.out_dir + "/" + tag + "_scan.csv";
    {
        std::ofstream out(summary_path);
        out << "cfl,status,iter,seconds,l1_full,fastest\n";
        for (std::size_t k = 0; k < cfls.size(); ++k) {
            const auto& s = solves[k];
            out << detail::full(cfls[k]) << ',' << status_name(s.result.status) << ','
                << s.result.stats.iterations << ',' << detail::fixed2(s.seconds) << ','
                << (s.error ? detail::full(s.error->l1) : "") << ','
                << (static_cast<int>(k) == fastest ? 1 : 0) << '\n';
        }
    }
    outputs.push_back(summary_path);
    for (std::size_t k = 0; k < cfls.size(); ++k) {
        std::ostringstream hp;
        hp << cfg.out_dir << '/' << tag << detail::full(cfls[k]).substr(0, 8) << "_history.jsonl";
        write_history_jsonl(hp.str(), solves[k].result.stats);
        outputs.push_back(hp.str());
    }
    auto j = detail::config_json(cfg, cfg.scheme_config());
    j["cfls"] = cfls;
    detail::write_manifest(cfg.out_dir + "/" + tag + "_manifest.json", j, outputs);

    for (std::size_t k = 0; k < cfls.size(); ++k)
        std::printf("cfl %-6.3g %-13s iter %-7ld %8.2fs%s\n", cfls[k],
                    status_name(solves[k].result.status), solves[k].result.stats.iterations,
                    solves[k].seconds, static_cast<int>(k) == fastest ? "  <- fastest" : "");
    if (fastest < 0) std::printf("no CFL value converged\n");
    return 0;
}

} // namespace hjsweep

#endif // HJSWEEP_RUNNER_HPP
