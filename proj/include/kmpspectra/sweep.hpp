#pragma once

#include <atomic>
#include <cstring>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kmpspectra/json_io.hpp"
#include "kmpspectra/kmp.hpp"
#include "kmpspectra/prng.hpp"

namespace kmpspectra {

struct SweepConfig {
    int n = 4;
    int k_max = 4;
    int trials = 100;
    uint64_t seed = 1;
    double edge_probability = 0.5;
    WeightLaw weight_law = WeightLaw::Uniform01;
    bool exact_mode = false;
    double tolerance = 1e-8;
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const {
        if (trials < 1) throw std::invalid_argument("sweep: trials >= 1 required");
        if (!exact_mode && tolerance <= 0)
            throw std::invalid_argument("sweep: positive tolerance required in float mode");
        if (k_max < 2) throw std::invalid_argument("sweep: k_max >= 2 required");
        // fail before doing any work if the largest state space is too big
        check_dimension_guard(multiset_count(n, k_max), "sweep");
    }
};

/// One trial: the instance digest, the per-particle-count eigenvalue data,
/// and the conjecture verdicts. Violating instances carry their full
/// hypergraph for replay.
struct SweepRecord {
    int trial = 0;
    std::string digest;
    bool connected = false;
    std::vector<double> lambda_star;  // per k = 1..k_max
    std::vector<double> omega;        // per k = 1..k_max
    int argmin_block = 0;             // smallest k attaining min omega
    bool min_at_two_particles = false;
    bool gap_equality_ok = false;  // smallest non-trivial eigenvalue stabilizes at k=2
    bool parity_ordering_ok = false;
    bool phi_bound_ok = false;
    // exact mode only: "p/q" when the value was recognized as rational,
    // "~<decimal>" when it is a tightly bracketed irrational
    std::vector<std::string> lambda_star_exact, omega_exact;
    json hypergraph;  // populated when any verdict fails

    bool violation() const { return !(gap_equality_ok && parity_ordering_ok && phi_bound_ok); }
};

struct SweepSummary {
    int trials = 0;
    int violations_gap_equality = 0;
    int violations_parity = 0;
    int violations_phi = 0;
    std::vector<int> violating_trials;
};

namespace detail {

inline std::string weight_map_digest(const Hypergraph<double>& g) {
    // FNV-1a over the (mask, weight bits) stream; stable across platforms.
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& [mask, w] : g.weights) {
        mix(mask);
        uint64_t bits;
        static_assert(sizeof(double) == sizeof(uint64_t));
        std::memcpy(&bits, &w, sizeof(bits));
        mix(bits);
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline SweepRecord run_trial_float(const SweepConfig& cfg, int trial) {
    SweepRecord rec;
    rec.trial = trial;
    Hypergraph<double> g = random_hypergraph<double>(cfg.n, cfg.edge_probability, cfg.weight_law,
                                                     substream_seed(cfg.seed, trial));
    rec.digest = weight_map_digest(g);
    rec.connected = is_connected(g);
    double tol = cfg.tolerance;
    for (int k = 1; k <= cfg.k_max; ++k) {
        rec.lambda_star.push_back(lambda_min_star_kmp_float(g, k, 1e-7));
        rec.omega.push_back(omega_k_float(g, k));
    }
    double min_omega = rec.omega[0];
    rec.argmin_block = 1;
    for (int k = 2; k <= cfg.k_max; ++k) {
        if (rec.omega[k - 1] < min_omega - tol) {
            min_omega = rec.omega[k - 1];
            rec.argmin_block = k;
        }
    }
    rec.min_at_two_particles = rec.omega[1] <= min_omega + tol || rec.omega[0] <= min_omega + tol;
    rec.gap_equality_ok = true;
    for (int k = 2; k <= cfg.k_max; ++k)
        if (std::fabs(rec.lambda_star[k - 1] - rec.lambda_star[1]) > tol)
            rec.gap_equality_ok = false;
    rec.parity_ordering_ok = true;
    for (int k = 1; k + 2 <= cfg.k_max; ++k)
        if (rec.omega[k - 1] > rec.omega[k + 1] + tol) rec.parity_ordering_ok = false;
    double bound = phi(g).minimum;
    rec.phi_bound_ok = true;
    for (double w : rec.omega)
        if (w > bound + tol) rec.phi_bound_ok = false;
    if (rec.violation()) rec.hypergraph = hypergraph_to_json(g);
    return rec;
}

inline SweepRecord run_trial_exact(const SweepConfig& cfg, int trial) {
    SweepRecord rec;
    rec.trial = trial;
    Hypergraph<Rational> g = random_hypergraph<Rational>(
        cfg.n, cfg.edge_probability, cfg.weight_law, substream_seed(cfg.seed, trial));
    rec.digest = weight_map_digest(to_double_hypergraph(g));
    rec.connected = is_connected(g);
    std::vector<Poly> blocks;
    for (int k = 1; k <= cfg.k_max; ++k) blocks.push_back(pure_block_charpoly(g, k));
    auto describe = [](const poly::RootInterval& ri) {
        if (ri.exact) return rational_to_string(ri.value);
        std::ostringstream os;
        os << "~" << std::setprecision(15) << to_double(ri.midpoint());
        return os.str();
    };
    for (int k = 1; k <= cfg.k_max; ++k) {
        auto wk = poly::isolate_extreme_root(blocks[k - 1], true);
        rec.omega.push_back(to_double(wk.midpoint()));
        rec.omega_exact.push_back(describe(wk));
        // the smallest non-trivial eigenvalue is the min over blocks up to k
        Poly min_poly = blocks[0];
        for (int j = 2; j <= k; ++j)
            if (poly::compare_smallest_roots(blocks[j - 1], min_poly) < 0) min_poly = blocks[j - 1];
        auto lk = poly::isolate_extreme_root(min_poly, true);
        rec.lambda_star.push_back(to_double(lk.midpoint()));
        rec.lambda_star_exact.push_back(describe(lk));
    }
    rec.argmin_block = 1;
    Poly best = blocks[0];
    for (int k = 2; k <= cfg.k_max; ++k) {
        if (poly::compare_smallest_roots(blocks[k - 1], best) < 0) {
            best = blocks[k - 1];
            rec.argmin_block = k;
        }
    }
    rec.min_at_two_particles = poly::compare_smallest_roots(blocks[1], best) <= 0 ||
                               poly::compare_smallest_roots(blocks[0], best) <= 0;
    // equality of the min over blocks with the two-particle min, exactly
    rec.gap_equality_ok = poly::compare_smallest_roots(blocks[0], best) == 0 ||
                          poly::compare_smallest_roots(blocks[1], best) == 0;
    rec.parity_ordering_ok = true;
    for (int k = 1; k + 2 <= cfg.k_max; ++k)
        if (poly::compare_smallest_roots(blocks[k - 1], blocks[k + 1]) > 0)
            rec.parity_ordering_ok = false;
    Rational bound = phi(g).minimum;
    rec.phi_bound_ok = true;
    for (const auto& p : blocks) {
        bool below_or_at =
            poly::count_roots_below(p, bound) > 0 || sgn(poly::eval(p, bound)) == 0;
        if (!below_or_at) rec.phi_bound_ok = false;
    }
    if (rec.violation()) rec.hypergraph = hypergraph_to_json(g);
    return rec;
}

} // namespace detail

struct SweepResult {
    std::vector<SweepRecord> records;
    SweepSummary summary;
};

/// Runs all trials over a bounded worker pool; records land in trial order so
/// output is byte-identical for a fixed (config, seed, mode) regardless of
/// thread count.
inline SweepResult sweep(const SweepConfig& cfg) {
    cfg.validate();
    SweepResult out;
    out.records.resize(static_cast<size_t>(cfg.trials));
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    unsigned nthreads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(cfg.trials));
    auto worker = [&]() {
        while (true) {
            int t = next.fetch_add(1);
            if (t >= cfg.trials || failed.load()) return;
            try {
                out.records[static_cast<size_t>(t)] =
                    cfg.exact_mode ? detail::run_trial_exact(cfg, t) : detail::run_trial_float(cfg, t);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                error_message = e.what();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) throw internal_error("sweep trial failed: " + error_message);

    out.summary.trials = cfg.trials;
    for (const auto& rec : out.records) {
        if (!rec.gap_equality_ok) ++out.summary.violations_gap_equality;
        if (!rec.parity_ordering_ok) ++out.summary.violations_parity;
        if (!rec.phi_bound_ok) ++out.summary.violations_phi;
        if (rec.violation()) out.summary.violating_trials.push_back(rec.trial);
    }
    return out;
}

/// CSV: one row per trial, eigenvalues with 15 significant digits.
inline std::string sweep_to_csv(const SweepConfig& cfg, const SweepResult& result) {
    std::ostringstream os;
    os << "trial,digest,connected";
    for (int k = 1; k <= cfg.k_max; ++k) os << ",lambda_star_" << k;
    for (int k = 1; k <= cfg.k_max; ++k) os << ",omega_" << k;
    os << ",argmin_block,min_at_two,gap_equality_ok,parity_ordering_ok,phi_bound_ok\n";
    os << std::setprecision(15);
    for (const auto& rec : result.records) {
        os << rec.trial << "," << rec.digest << "," << (rec.connected ? 1 : 0);
        for (double v : rec.lambda_star) os << "," << v;
        for (double v : rec.omega) os << "," << v;
        os << "," << rec.argmin_block << "," << (rec.min_at_two_particles ? 1 : 0) << ","
           << (rec.gap_equality_ok ? 1 : 0) << "," << (rec.parity_ordering_ok ? 1 : 0) << ","
           << (rec.phi_bound_ok ? 1 : 0) << "\n";
    }
    return os.str();
}

inline json sweep_to_json(const SweepConfig& cfg, const SweepResult& result) {
    json records = json::array();
    for (const auto& rec : result.records) {
        json r{{"trial", rec.trial},
               {"digest", rec.digest},
               {"connected", rec.connected},
               {"lambda_star", rec.lambda_star},
               {"omega", rec.omega},
               {"argmin_block", rec.argmin_block},
               {"min_at_two_particles", rec.min_at_two_particles},
               {"gap_equality_ok", rec.gap_equality_ok},
               {"parity_ordering_ok", rec.parity_ordering_ok},
               {"phi_bound_ok", rec.phi_bound_ok}};
        if (!rec.lambda_star_exact.empty()) {
            r["lambda_star_exact"] = rec.lambda_star_exact;
            r["omega_exact"] = rec.omega_exact;
        }
        if (rec.violation()) r["hypergraph"] = rec.hypergraph;
        records.push_back(r);
    }
    json summary{{"trials", result.summary.trials},
                 {"violations_gap_equality", result.summary.violations_gap_equality},
                 {"violations_parity", result.summary.violations_parity},
                 {"violations_phi", result.summary.violations_phi},
                 {"violating_trials", result.summary.violating_trials}};
    json config{{"n", cfg.n},
                {"k_max", cfg.k_max},
                {"trials", cfg.trials},
                {"seed", cfg.seed},
                {"edge_probability", cfg.edge_probability},
                {"mode", cfg.exact_mode ? "exact" : "float"},
                {"tolerance", cfg.tolerance}};
    return json{{"config", config}, {"summary", summary}, {"records", records}};
}

} // namespace kmpspectra
