#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "upspec/expansion.hpp"
#include "upspec/garland.hpp"
#include "upspec/io.hpp"
#include "upspec/models.hpp"
#include "upspec/spectrum.hpp"
#include "upspec/version.hpp"

namespace upspec {

/// Experiment runner configuration. Grid experiments build their parameter
/// cells from the n/p/q lists; garland_audit may instead carry explicit cells
/// (mixed models). Per-trial seeds derive from (seed, cell index, trial), so
/// results are reproducible and trial-parallelism cannot reorder randomness.
struct ExperimentConfig {
    std::string experiment;  // concentration | counterexample | garland_audit |
                             // complete_complex_golden
    int k = 2;
    std::vector<int> n_list;
    std::vector<double> p_list;
    std::vector<double> q_list;
    std::vector<std::pair<int, int>> golden_pairs;
    std::vector<ModelSpec> cells;  // explicit cells override the grid
    int trials = 1;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1ULL << 24;
    int jobs = 1;
    std::string out;  // CSV path; empty = don't write
};

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    cfg.k = j.value("k", 2);
    auto read_list = [&](const char* key, auto& out_vec) {
        if (!j.contains(key)) return;
        const auto& v = j.at(key);
        using T = typename std::decay_t<decltype(out_vec)>::value_type;
        if (v.is_array())
            for (const auto& e : v) out_vec.push_back(e.get<T>());
        else
            out_vec.push_back(v.get<T>());
    };
    read_list("n", cfg.n_list);
    read_list("p", cfg.p_list);
    read_list("q", cfg.q_list);
    if (j.contains("pairs"))
        for (const auto& pr : j.at("pairs"))
            cfg.golden_pairs.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
    if (j.contains("cells")) {
        for (const auto& jc : j.at("cells")) {
            ModelSpec ms;
            ms.model = model_kind_from_name(jc.at("model").get<std::string>());
            ms.n = jc.at("n").get<int>();
            ms.k = jc.value("k", cfg.k);
            ms.p = jc.value("p", 0.0);
            ms.q = jc.value("q", 0.0);
            cfg.cells.push_back(ms);
        }
    }
    cfg.trials = j.value("trials", 1);
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.budget = j.value("budget", std::uint64_t{1} << 24);
    cfg.jobs = j.value("jobs", 1);
    cfg.out = j.value("out", std::string{});
    return cfg;
}

inline ordered_json config_to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["experiment"] = cfg.experiment;
    j["k"] = cfg.k;
    j["n"] = cfg.n_list;
    j["p"] = cfg.p_list;
    j["q"] = cfg.q_list;
    if (!cfg.golden_pairs.empty()) {
        ordered_json pairs = ordered_json::array();
        for (auto [n, k] : cfg.golden_pairs) pairs.push_back({n, k});
        j["pairs"] = std::move(pairs);
    }
    if (!cfg.cells.empty()) {
        ordered_json cells = ordered_json::array();
        for (const ModelSpec& ms : cfg.cells) {
            ordered_json c;
            c["model"] = model_kind_name(ms.model);
            c["n"] = ms.n;
            c["k"] = ms.k;
            c["p"] = ms.p;
            c["q"] = ms.q;
            cells.push_back(std::move(c));
        }
        j["cells"] = std::move(cells);
    }
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["budget"] = cfg.budget;
    j["jobs"] = cfg.jobs;
    j["out"] = cfg.out;
    return j;
}

/// Outcome of one experiment run. Rows are fully formatted CSV cells; wall
/// times live in the summary (never in rows, which must be byte-identical
/// across reruns). exit_code: 0 clean, 2 refusal (budget/precondition),
/// 3 deterministic-theorem violation.
struct ExperimentResult {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    ordered_json summary;
    std::vector<std::string> violations;
    std::vector<std::pair<std::string, ordered_json>> dumps;  // suffix -> payload
    bool refused = false;
    int exit_code = 0;
};

namespace detail {

template <typename Fn>
void parallel_for(std::int64_t count, int jobs, Fn&& fn) {
    std::int64_t workers = std::max<std::int64_t>(1, std::min<std::int64_t>(jobs, count));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (std::int64_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::int64_t i; (i = next.fetch_add(1)) < count;) fn(i);
        });
    for (auto& th : pool) th.join();
}

inline std::string sanitize_note(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

inline std::string fmt_bool(bool b) { return b ? "1" : "0"; }

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Grid of model cells for an experiment config.
inline std::vector<ModelSpec> experiment_cells(const ExperimentConfig& cfg) {
    if (!cfg.cells.empty()) return cfg.cells;
    std::vector<ModelSpec> cells;
    const bool counter = cfg.experiment == "counterexample";
    std::vector<double> qs = cfg.q_list.empty() ? std::vector<double>{0.0} : cfg.q_list;
    for (int n : cfg.n_list) {
        std::vector<double> ps = cfg.p_list;
        if (ps.empty()) {
            if (counter)
                ps.push_back(1.0);
            else
                // Dense regime for spectral concentration; the formula leaves
                // [0,1] below n = 27, so clamp rather than hand a bad p to
                // the model validator.
                ps.push_back(std::min(
                    1.0, 8.0 * std::log(static_cast<double>(n)) / static_cast<double>(n)));
        }
        for (double p : ps) {
            for (double q : counter ? qs : std::vector<double>{0.0}) {
                ModelSpec ms;
                ms.model = counter ? ModelKind::counterexample_z : ModelKind::linial_meshulam;
                ms.n = n;
                ms.k = cfg.k;
                ms.p = p;
                ms.q = q;
                cells.push_back(ms);
            }
        }
    }
    return cells;
}

}  // namespace detail

/// Concentration experiment: X^k(n,p) samples; trivial multiplicity of the
/// normalized up-Laplacian must equal C(n-1,k-1) in every trial (structural),
/// nontrivial eigenvalues are compared against 1 +- 4/sqrt(d) and the
/// adjacency spectrum against clusters d +- 4 sqrt(d) and 0 +- 4 sqrt(d),
/// d = p(n-k).
inline ExperimentResult run_concentration(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"cell",        "trial",       "model",      "n",
                   "k",           "p",           "q",          "seed",
                   "order",       "expected_trivial",          "trivial_count",
                   "trivial_ok",  "d",           "lap_band",   "lap_nt_min",
                   "lap_nt_max",  "lap_ok",      "adj_band",   "adj_top_min",
                   "adj_top_max", "adj_rest_min", "adj_rest_max", "adj_ok",
                   "pass",        "note"};
    ordered_json cell_summaries = ordered_json::array();
    std::vector<ModelSpec> cells = detail::experiment_cells(cfg);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const ModelSpec& cell = cells[ci];
        auto t0 = std::chrono::steady_clock::now();
        const std::int64_t T = cfg.trials;
        std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(T));
        std::vector<char> passes(static_cast<std::size_t>(T), 0);
        std::vector<char> trivial_fail(static_cast<std::size_t>(T), 0);
        std::vector<std::string> errors(static_cast<std::size_t>(T));
        detail::parallel_for(T, cfg.jobs, [&](std::int64_t t) {
            std::uint64_t seed_t =
                rng::trial_seed(cfg.seed, static_cast<std::uint64_t>(ci), static_cast<std::uint64_t>(t));
            std::vector<std::string> row{
                std::to_string(ci), std::to_string(t), model_kind_name(cell.model),
                std::to_string(cell.n), std::to_string(cell.k), format_double(cell.p),
                format_double(cell.q), std::to_string(seed_t)};
            try {
                SimplicialComplex X = linial_meshulam(cell.n, cell.k, cell.p, seed_t);
                const double d = cell.p * static_cast<double>(cell.n - cell.k);
                const double band = 4.0 / std::sqrt(d);
                SpectrumReport lap = normalized_up_spectrum(X);
                const std::int64_t expect_t = binom(cell.n - 1, cell.k - 1);
                bool trivial_ok = lap.trivial_count == expect_t && lap.split_clean;
                Eigen::VectorXd nt = lap.nontrivial_ascending();
                double nt_min = nt.size() ? nt(0) : std::nan("");
                double nt_max = nt.size() ? nt(nt.size() - 1) : std::nan("");
                bool lap_ok = nt.size() > 0 && nt_min >= 1.0 - band && nt_max <= 1.0 + band;
                SpectrumReport adj = adjacency_spectrum(X);
                const std::int64_t m = adj.eigenvalues.size();
                const std::int64_t tt = adj.trivial_count;
                double top_min = adj.eigenvalues(m - tt), top_max = adj.eigenvalues(m - 1);
                double rest_min = adj.eigenvalues(0), rest_max = adj.eigenvalues(m - tt - 1);
                const double aband = 4.0 * std::sqrt(d);
                bool adj_ok = top_min >= d - aband && top_max <= d + aband &&
                              rest_min >= -aband && rest_max <= aband;
                bool pass = trivial_ok && lap_ok && adj_ok;
                passes[static_cast<std::size_t>(t)] = pass;
                trivial_fail[static_cast<std::size_t>(t)] = !trivial_ok;
                row.insert(row.end(),
                           {std::to_string(m), std::to_string(expect_t),
                            std::to_string(lap.trivial_count), detail::fmt_bool(trivial_ok),
                            format_double(d), format_double(band), format_double(nt_min),
                            format_double(nt_max), detail::fmt_bool(lap_ok), format_double(aband),
                            format_double(top_min), format_double(top_max), format_double(rest_min),
                            format_double(rest_max), detail::fmt_bool(adj_ok),
                            detail::fmt_bool(pass), ""});
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(t)] = e.what();
                row.insert(row.end(), {"nan", "nan", "nan", "0", "nan", "nan", "nan", "nan", "0",
                                       "nan", "nan", "nan", "nan", "nan", "0", "0",
                                       detail::sanitize_note(std::string("refused: ") + e.what())});
            }
            rows[static_cast<std::size_t>(t)] = std::move(row);
        });
        std::int64_t pass_count = 0, trivial_bad = 0, refusals = 0;
        for (std::int64_t t = 0; t < T; ++t) {
            pass_count += passes[static_cast<std::size_t>(t)];
            trivial_bad += trivial_fail[static_cast<std::size_t>(t)];
            refusals += errors[static_cast<std::size_t>(t)].empty() ? 0 : 1;
            res.rows.push_back(std::move(rows[static_cast<std::size_t>(t)]));
        }
        if (trivial_bad > 0) {
            res.violations.push_back("cell " + std::to_string(ci) +
                                     ": trivial multiplicity mismatch (structural identity)");
        }
        if (refusals > 0) res.refused = true;
        ordered_json cs;
        cs["cell"] = ci;
        cs["n"] = cell.n;
        cs["p"] = cell.p;
        cs["trials"] = T;
        cs["passes"] = pass_count;
        cs["pass_rate"] = static_cast<double>(pass_count) / static_cast<double>(T);
        cs["trivial_failures"] = trivial_bad;
        cs["refusals"] = refusals;
        cs["seconds"] = detail::seconds_since(t0);
        cell_summaries.push_back(std::move(cs));
    }
    res.summary["cells"] = std::move(cell_summaries);
    res.exit_code = !res.violations.empty() ? 3 : (res.refused ? 2 : 0);
    return res;
}

/// Counterexample experiment on Z^k(n,p,q): exact class norm and coboundary
/// support of the planted cochain, Z2 cohomology dimensions below k, and the
/// nontrivial normalized-Laplacian spectrum against 1 +- 6/sqrt(rn) with
/// r = p/2 + q - pq/2. For q = 0 the planted cochain must be a cocycle
/// (deterministic; violation is a defect).
inline ExperimentResult run_counterexample(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"cell",       "trial",        "model",      "n",
                   "k",          "p",            "q",          "seed",
                   "class_support", "lower_faces", "class_norm", "delta_support",
                   "upper_faces", "delta_norm",  "ratio",      "h_dims",
                   "h_km1",      "band_lo",      "band_hi",    "nt_min",
                   "nt_max",     "spec_ok",      "norm_ok",    "ratio_ok",
                   "delta_zero", "pass",         "note"};
    ordered_json cell_summaries = ordered_json::array();
    std::vector<ModelSpec> cells = detail::experiment_cells(cfg);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const ModelSpec& cell = cells[ci];
        auto t0 = std::chrono::steady_clock::now();
        const std::int64_t T = cfg.trials;
        std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(T));
        std::vector<char> passes(static_cast<std::size_t>(T), 0), norm_oks(static_cast<std::size_t>(T), 0),
            ratio_oks(static_cast<std::size_t>(T), 0), spec_oks(static_cast<std::size_t>(T), 0),
            h_zero(static_cast<std::size_t>(T), 0), h_pos(static_cast<std::size_t>(T), 0),
            cocycle_bad(static_cast<std::size_t>(T), 0);
        std::vector<double> ratios(static_cast<std::size_t>(T), 0.0);
        std::vector<std::string> errors(static_cast<std::size_t>(T));
        detail::parallel_for(T, cfg.jobs, [&](std::int64_t t) {
            std::uint64_t seed_t =
                rng::trial_seed(cfg.seed, static_cast<std::uint64_t>(ci), static_cast<std::uint64_t>(t));
            std::vector<std::string> row{
                std::to_string(ci), std::to_string(t), model_kind_name(cell.model),
                std::to_string(cell.n), std::to_string(cell.k), format_double(cell.p),
                format_double(cell.q), std::to_string(seed_t)};
            try {
                CounterexampleSample s =
                    counterexample_z(cell.n, cell.k, cell.p, cell.q, seed_t);
                WitnessReport w = z2_expansion_witness(s.complex, s.a, cfg.budget);
                if (w.refused) throw std::runtime_error("class-norm budget exceeded");
                std::string h_dims;
                std::int64_t h_km1 = 0;
                for (int i = 0; i < cell.k; ++i) {
                    std::int64_t hd = gf2_cohomology_dim(s.complex, i);
                    if (i) h_dims += '|';
                    h_dims += std::to_string(hd);
                    if (i == cell.k - 1) h_km1 = hd;
                }
                ModelSpec ms = cell;
                double r = link_edge_probability(ms);
                double band = 6.0 / std::sqrt(r * static_cast<double>(cell.n));
                SpectrumReport lap = normalized_up_spectrum(s.complex);
                Eigen::VectorXd nt = lap.nontrivial_ascending();
                double nt_min = nt.size() ? nt(0) : std::nan("");
                double nt_max = nt.size() ? nt(nt.size() - 1) : std::nan("");
                bool spec_ok = nt.size() > 0 && nt_min >= 1.0 - band && nt_max <= 1.0 + band;
                bool norm_ok = w.class_norm >= 0.3;
                bool ratio_ok = w.ratio <= 2.0 * cell.q + 1e-12;
                bool delta_zero = w.delta_support == 0;
                bool pass = cell.q == 0.0 ? (delta_zero && h_km1 >= 1 && spec_ok)
                                          : (spec_ok && norm_ok && ratio_ok);
                if (cell.q == 0.0 && !delta_zero) cocycle_bad[static_cast<std::size_t>(t)] = 1;
                passes[static_cast<std::size_t>(t)] = pass;
                norm_oks[static_cast<std::size_t>(t)] = norm_ok;
                ratio_oks[static_cast<std::size_t>(t)] = ratio_ok;
                spec_oks[static_cast<std::size_t>(t)] = spec_ok;
                h_zero[static_cast<std::size_t>(t)] = h_km1 == 0;
                h_pos[static_cast<std::size_t>(t)] = h_km1 >= 1;
                ratios[static_cast<std::size_t>(t)] = w.ratio;
                row.insert(row.end(),
                           {std::to_string(w.class_support), std::to_string(w.lower_faces),
                            format_double(w.class_norm), std::to_string(w.delta_support),
                            std::to_string(w.upper_faces), format_double(w.delta_norm),
                            format_double(w.ratio), h_dims, std::to_string(h_km1),
                            format_double(1.0 - band), format_double(1.0 + band),
                            format_double(nt_min), format_double(nt_max),
                            detail::fmt_bool(spec_ok), detail::fmt_bool(norm_ok),
                            detail::fmt_bool(ratio_ok), detail::fmt_bool(delta_zero),
                            detail::fmt_bool(pass), ""});
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(t)] = e.what();
                row.insert(row.end(), {"nan", "nan", "nan", "nan", "nan", "nan", "nan", "", "nan",
                                       "nan", "nan", "nan", "nan", "0", "0", "0", "0", "0",
                                       detail::sanitize_note(std::string("refused: ") + e.what())});
            }
            rows[static_cast<std::size_t>(t)] = std::move(row);
        });
        std::int64_t pass_count = 0, norm_count = 0, ratio_count = 0, spec_count = 0,
                     hz_count = 0, hp_count = 0, refusals = 0, cocycle_violations = 0;
        double ratio_sum = 0.0;
        for (std::int64_t t = 0; t < T; ++t) {
            pass_count += passes[static_cast<std::size_t>(t)];
            norm_count += norm_oks[static_cast<std::size_t>(t)];
            ratio_count += ratio_oks[static_cast<std::size_t>(t)];
            spec_count += spec_oks[static_cast<std::size_t>(t)];
            hz_count += h_zero[static_cast<std::size_t>(t)];
            hp_count += h_pos[static_cast<std::size_t>(t)];
            cocycle_violations += cocycle_bad[static_cast<std::size_t>(t)];
            ratio_sum += ratios[static_cast<std::size_t>(t)];
            refusals += errors[static_cast<std::size_t>(t)].empty() ? 0 : 1;
            res.rows.push_back(std::move(rows[static_cast<std::size_t>(t)]));
        }
        if (cocycle_violations > 0)
            res.violations.push_back("cell " + std::to_string(ci) +
                                     ": planted cochain not a cocycle at q=0");
        if (refusals > 0) res.refused = true;
        ordered_json cs;
        cs["cell"] = ci;
        cs["n"] = cell.n;
        cs["p"] = cell.p;
        cs["q"] = cell.q;
        cs["trials"] = T;
        cs["passes"] = pass_count;
        cs["norm_rate"] = static_cast<double>(norm_count) / static_cast<double>(T);
        cs["ratio_rate"] = static_cast<double>(ratio_count) / static_cast<double>(T);
        cs["spec_rate"] = static_cast<double>(spec_count) / static_cast<double>(T);
        cs["h_km1_zero_rate"] = static_cast<double>(hz_count) / static_cast<double>(T);
        cs["h_km1_pos_rate"] = static_cast<double>(hp_count) / static_cast<double>(T);
        cs["mean_ratio"] = ratio_sum / static_cast<double>(T);
        cs["refusals"] = refusals;
        cs["seconds"] = detail::seconds_since(t0);
        cell_summaries.push_back(std::move(cs));
    }
    // Ratio monotonicity across a pure-q grid (same n, k, p in every cell).
    bool same_np = true;
    for (const ModelSpec& ms : cells)
        if (ms.n != cells[0].n || ms.k != cells[0].k || ms.p != cells[0].p) same_np = false;
    if (same_np && cells.size() >= 2) {
        bool sorted_q = true, strict = true;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            if (cells[i].q <= cells[i - 1].q) sorted_q = false;
            double prev = cell_summaries[i - 1]["mean_ratio"].get<double>();
            double curr = cell_summaries[i]["mean_ratio"].get<double>();
            if (!(curr > prev)) strict = false;
        }
        if (sorted_q) res.summary["mean_ratio_strictly_increasing"] = strict;
    }
    res.summary["cells"] = std::move(cell_summaries);
    res.exit_code = !res.violations.empty() ? 3 : (res.refused ? 2 : 0);
    return res;
}

/// Garland audit: per sample, both sandwich theorems (normalized Laplacian
/// interval from link spectra; adjacency clusters from link conditions with
/// d = r(n-k)) plus the exact localization-sum identities. The theorems are
/// deterministic: any failure is a defect and the offending complex is dumped.
inline ExperimentResult run_garland_audit(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"cell",    "trial",   "model",       "n",
                   "k",       "p",       "q",           "seed",
                   "pure",    "lo",      "hi",          "trivial_max_abs",
                   "nt_min",  "nt_max",  "garland_ok",  "d",
                   "f",       "g",       "h",           "phi",
                   "adj_top_lo", "adj_top_hi", "adj_rest_lo", "adj_rest_hi",
                   "adj_ok",  "up_sum_err", "adj_sum_err", "sums_ok",
                   "pass",    "note"};
    ordered_json cell_summaries = ordered_json::array();
    std::vector<ModelSpec> cells = detail::experiment_cells(cfg);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const ModelSpec& cell = cells[ci];
        auto t0 = std::chrono::steady_clock::now();
        const std::int64_t T = cfg.trials;
        std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(T));
        std::vector<char> passes(static_cast<std::size_t>(T), 0),
            fails(static_cast<std::size_t>(T), 0);
        std::vector<std::string> errors(static_cast<std::size_t>(T));
        std::vector<ordered_json> fail_dumps(static_cast<std::size_t>(T));
        detail::parallel_for(T, cfg.jobs, [&](std::int64_t t) {
            std::uint64_t seed_t =
                rng::trial_seed(cfg.seed, static_cast<std::uint64_t>(ci), static_cast<std::uint64_t>(t));
            ModelSpec ms = cell;
            ms.seed = seed_t;
            std::vector<std::string> row{
                std::to_string(ci), std::to_string(t), model_kind_name(cell.model),
                std::to_string(cell.n), std::to_string(cell.k), format_double(cell.p),
                format_double(cell.q), std::to_string(seed_t)};
            try {
                CounterexampleSample s = sample_model(ms);
                const SimplicialComplex& X = s.complex;
                if (!X.is_pure()) throw std::runtime_error("sample is not pure");
                GarlandReport g = verify_garland(X);
                double d = link_edge_probability(ms) * static_cast<double>(cell.n - cell.k);
                AdjacencyIntervalReport a = verify_adjacency_intervals(X, d);
                double up_err = localized_up_sum_error(X);
                double adj_err = localized_adjacency_sum_error(X);
                bool sums_ok = up_err == 0.0 && adj_err == 0.0;
                bool pass = g.pass && a.pass && sums_ok;
                passes[static_cast<std::size_t>(t)] = pass;
                if (!pass) {
                    fails[static_cast<std::size_t>(t)] = 1;
                    ordered_json dump;
                    dump["cell"] = ci;
                    dump["trial"] = t;
                    dump["seed"] = seed_t;
                    dump["garland_pass"] = g.pass;
                    dump["adjacency_pass"] = a.pass;
                    dump["sums_ok"] = sums_ok;
                    dump["complex"] = complex_to_json(X);
                    fail_dumps[static_cast<std::size_t>(t)] = std::move(dump);
                }
                row.insert(
                    row.end(),
                    {"1", format_double(g.interval.lo), format_double(g.interval.hi),
                     format_double(g.trivial_max_abs), format_double(g.nontrivial_min),
                     format_double(g.nontrivial_max), detail::fmt_bool(g.pass), format_double(d),
                     format_double(a.conditions.f), format_double(a.conditions.g),
                     format_double(a.conditions.h), format_double(a.conditions.phi),
                     format_double(a.top_lo), format_double(a.top_hi), format_double(a.rest_lo),
                     format_double(a.rest_hi), detail::fmt_bool(a.pass), format_double(up_err),
                     format_double(adj_err), detail::fmt_bool(sums_ok), detail::fmt_bool(pass),
                     ""});
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(t)] = e.what();
                row.insert(row.end(),
                           {"0",   "nan", "nan", "nan", "nan", "nan", "0", "nan", "nan", "nan",
                            "nan", "nan", "nan", "nan", "nan", "nan", "0", "nan", "nan", "0", "0",
                            detail::sanitize_note(std::string("refused: ") + e.what())});
            }
            rows[static_cast<std::size_t>(t)] = std::move(row);
        });
        std::int64_t pass_count = 0, fail_count = 0, refusals = 0;
        for (std::int64_t t = 0; t < T; ++t) {
            pass_count += passes[static_cast<std::size_t>(t)];
            refusals += errors[static_cast<std::size_t>(t)].empty() ? 0 : 1;
            if (fails[static_cast<std::size_t>(t)]) {
                ++fail_count;
                if (res.dumps.empty())
                    res.dumps.emplace_back(
                        "violation_cell" + std::to_string(ci) + "_trial" + std::to_string(t) +
                            ".json",
                        std::move(fail_dumps[static_cast<std::size_t>(t)]));
            }
            res.rows.push_back(std::move(rows[static_cast<std::size_t>(t)]));
        }
        if (fail_count > 0)
            res.violations.push_back("cell " + std::to_string(ci) + ": " +
                                     std::to_string(fail_count) +
                                     " sandwich-theorem failures (deterministic)");
        if (refusals > 0) res.refused = true;
        ordered_json cs;
        cs["cell"] = ci;
        cs["model"] = model_kind_name(cell.model);
        cs["n"] = cell.n;
        cs["p"] = cell.p;
        cs["q"] = cell.q;
        cs["trials"] = T;
        cs["passes"] = pass_count;
        cs["failures"] = fail_count;
        cs["refusals"] = refusals;
        cs["seconds"] = detail::seconds_since(t0);
        cell_summaries.push_back(std::move(cs));
    }
    res.summary["cells"] = std::move(cell_summaries);
    res.exit_code = !res.violations.empty() ? 3 : (res.refused ? 2 : 0);
    return res;
}

namespace detail {

/// Relative mismatch between a computed ascending spectrum and an expected
/// multiset given as (value, multiplicity) pairs in ascending value order.
inline double spectrum_mismatch(const Eigen::VectorXd& computed,
                                const std::vector<std::pair<double, std::int64_t>>& expected) {
    std::int64_t total = 0;
    for (const auto& [v, m] : expected) total += m;
    if (computed.size() != total) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::int64_t idx = 0;
    for (const auto& [v, m] : expected)
        for (std::int64_t j = 0; j < m; ++j, ++idx)
            worst = std::max(worst, std::abs(computed(idx) - v) / std::max(1.0, std::abs(v)));
    return worst;
}

}  // namespace detail

/// Golden spectra of complete complexes K_n^k: the unweighted up-Laplacian has
/// eigenvalues {0, n}, the normalized walk form {0, n/(n-k)}, the adjacency
/// {n-k, -k}, with multiplicities C(n-1,k-1) / C(n-1,k) throughout.
inline ExperimentResult run_complete_complex_golden(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"cell", "n", "k", "order", "lup_max_rel", "walk_max_rel", "adj_max_rel",
                   "lup_ok", "walk_ok", "adj_ok", "pass", "note"};
    ordered_json cell_summaries = ordered_json::array();
    const double tol = 1e-9;
    for (std::size_t ci = 0; ci < cfg.golden_pairs.size(); ++ci) {
        auto [n, k] = cfg.golden_pairs[ci];
        auto t0 = std::chrono::steady_clock::now();
        std::vector<std::string> row{std::to_string(ci), std::to_string(n), std::to_string(k)};
        try {
            SimplicialComplex X = SimplicialComplex::complete(n, k);
            const std::int64_t mult0 = binom(n - 1, k - 1);
            const std::int64_t mult1 = binom(n - 1, k);
            SpectrumReport lup = up_laplacian_spectrum(X, k - 1, WeightFunction::unit());
            double lup_err = detail::spectrum_mismatch(
                lup.eigenvalues, {{0.0, mult0}, {static_cast<double>(n), mult1}});
            SpectrumReport walk = normalized_up_spectrum(X);
            double walk_err = detail::spectrum_mismatch(
                walk.eigenvalues,
                {{0.0, mult0}, {static_cast<double>(n) / static_cast<double>(n - k), mult1}});
            SpectrumReport adj = adjacency_spectrum(X);
            double adj_err = detail::spectrum_mismatch(
                adj.eigenvalues,
                {{static_cast<double>(-k), mult1}, {static_cast<double>(n - k), mult0}});
            bool lup_ok = lup_err <= tol, walk_ok = walk_err <= tol, adj_ok = adj_err <= tol;
            bool pass = lup_ok && walk_ok && adj_ok;
            if (!pass)
                res.violations.push_back("golden mismatch at (n=" + std::to_string(n) +
                                         ", k=" + std::to_string(k) + ")");
            row.insert(row.end(),
                       {std::to_string(lup.eigenvalues.size()), format_double(lup_err),
                        format_double(walk_err), format_double(adj_err), detail::fmt_bool(lup_ok),
                        detail::fmt_bool(walk_ok), detail::fmt_bool(adj_ok),
                        detail::fmt_bool(pass), ""});
        } catch (const std::exception& e) {
            res.refused = true;
            row.insert(row.end(), {"nan", "nan", "nan", "nan", "0", "0", "0", "0",
                                   detail::sanitize_note(std::string("refused: ") + e.what())});
        }
        res.rows.push_back(std::move(row));
        ordered_json cs;
        cs["cell"] = ci;
        cs["n"] = n;
        cs["k"] = k;
        cs["seconds"] = detail::seconds_since(t0);
        cell_summaries.push_back(std::move(cs));
    }
    res.summary["cells"] = std::move(cell_summaries);
    res.exit_code = !res.violations.empty() ? 3 : (res.refused ? 2 : 0);
    return res;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.experiment == "concentration") return run_concentration(cfg);
    if (cfg.experiment == "counterexample") return run_counterexample(cfg);
    if (cfg.experiment == "garland_audit") return run_garland_audit(cfg);
    if (cfg.experiment == "complete_complex_golden") return run_complete_complex_golden(cfg);
    throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

/// Writes the CSV, the JSON sidecar (config + version + summary + violations),
/// and any violation dumps next to the CSV path.
inline void write_experiment_outputs(const ExperimentConfig& cfg, const ExperimentResult& res) {
    if (cfg.out.empty()) return;
    write_text_file(cfg.out, csv_text(res.columns, res.rows));
    ordered_json side;
    side["generated"] = iso8601_utc_now();
    side["library_version"] = library_version;
    side["config"] = config_to_json(cfg);
    side["summary"] = res.summary;
    side["violations"] = res.violations;
    side["exit_code"] = res.exit_code;
    write_text_file(cfg.out + ".meta.json", side.dump(2) + "\n");
    for (const auto& [suffix, payload] : res.dumps)
        write_text_file(cfg.out + "." + suffix, payload.dump(2) + "\n");
}

}  // namespace upspec
