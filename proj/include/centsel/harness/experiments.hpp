#ifndef CENTSEL_HARNESS_EXPERIMENTS_HPP
#define CENTSEL_HARNESS_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "centsel/error.hpp"
#include "centsel/graph.hpp"
#include "centsel/harness/config.hpp"
#include "centsel/harness/csv.hpp"
#include "centsel/harness/parallel.hpp"
#include "centsel/harness/trial.hpp"
#include "centsel/theory.hpp"

namespace centsel::harness {

/// Wilson score interval for k successes out of n at 95% confidence.
inline std::pair<double, double> wilson_interval(std::size_t successes, std::size_t total) {
    if (total == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(total);
    const double phat = static_cast<double>(successes) / nn;
    const double denom = 1.0 + z * z / nn;
    const double centre = (phat + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z * z / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Selection rate for one (p, filter, m) cell.
struct RateRow {
    std::string model;
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 0.0;
    std::string filter;
    std::int64_t m = 0;
    std::size_t trials = 0;
    std::size_t correct = 0;
    std::size_t errors = 0;
    double rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    double mean_delta = 0.0;
    double mean_min_u = 0.0;
    double median_sample_requirement = 0.0;
    std::uint64_t seed = 0;
};

inline const std::vector<std::string>& rates_header() {
    static const std::vector<std::string> h{"model", "n", "k", "p", "filter", "m", "trials", "correct", "errors", "rate",
                                            "wilson_lo", "wilson_hi", "mean_delta", "mean_min_u",
                                            "median_sample_requirement", "seed"};
    return h;
}

inline std::vector<std::string> to_fields(const RateRow& r) {
    return {r.model, std::to_string(r.n), std::to_string(r.k), format_double(r.p), r.filter, format_m(r.m),
            std::to_string(r.trials), std::to_string(r.correct), std::to_string(r.errors), format_double(r.rate),
            format_double(r.wilson_lo), format_double(r.wilson_hi), format_double(r.mean_delta),
            format_double(r.mean_min_u), format_double(r.median_sample_requirement), std::to_string(r.seed)};
}

/// Per-graph ground truth: delta per filter, min u and the sample requirement.
struct GraphRow {
    std::string model;
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 0.0;
    std::size_t graph_id = 0;
    std::string filter;
    std::size_t edges = 0;
    double delta = 0.0;
    double min_u = 0.0;
    double max_u = 0.0;
    double sample_requirement = 0.0;
    std::uint64_t hash = 0;
    std::uint64_t seed = 0;
};

inline const std::vector<std::string>& graphs_header() {
    static const std::vector<std::string> h{"model", "n",     "k",     "p",     "graph_id", "filter",
                                            "edges", "delta", "min_u", "max_u", "sample_requirement",
                                            "graph_hash", "seed"};
    return h;
}

inline std::vector<std::string> to_fields(const GraphRow& r) {
    return {r.model, std::to_string(r.n), std::to_string(r.k), format_double(r.p), std::to_string(r.graph_id),
            r.filter, std::to_string(r.edges), format_double(r.delta), format_double(r.min_u),
            format_double(r.max_u), format_double(r.sample_requirement), std::to_string(r.hash),
            std::to_string(r.seed)};
}

struct ExperimentResult {
    std::vector<TrialRecord> records;
    std::vector<RateRow> rates;
    std::vector<GraphRow> graphs;
};

inline std::vector<RateRow> summarize_rates(const std::vector<TrialRecord>& records, const ExperimentConfig& cfg) {
    struct Acc {
        std::size_t trials = 0, correct = 0, errors = 0;
        double delta = 0.0, min_u = 0.0;
        std::vector<double> requirement;
        const TrialRecord* first = nullptr;
    };
    // keyed by position in the config so output order follows the config
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Acc> cells;
    const auto ps = cfg.probabilities();
    auto index_of = [](const auto& v, const auto& x) {
        return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
    };
    for (const auto& r : records) {
        auto& a = cells[{index_of(ps, r.p), index_of(cfg.filters, r.filter), index_of(cfg.m_grid, r.m)}];
        if (!a.first) a.first = &r;
        ++a.trials;
        if (!r.error.empty()) ++a.errors;
        if (r.correct) ++a.correct;
        a.delta += r.delta;
        a.min_u += r.min_u;
        if (r.delta > 0.0 && r.min_u > 0.0) a.requirement.push_back(1.0 / (r.delta * r.delta * r.min_u * r.min_u));
    }
    std::vector<RateRow> out;
    for (const auto& [key, a] : cells) {
        RateRow row;
        row.model = a.first->model;
        row.n = a.first->n;
        row.k = a.first->k;
        row.p = a.first->p;
        row.filter = a.first->filter;
        row.m = a.first->m;
        row.trials = a.trials;
        row.correct = a.correct;
        row.errors = a.errors;
        row.rate = static_cast<double>(a.correct) / static_cast<double>(a.trials);
        std::tie(row.wilson_lo, row.wilson_hi) = wilson_interval(a.correct, a.trials);
        row.mean_delta = a.delta / static_cast<double>(a.trials);
        row.mean_min_u = a.min_u / static_cast<double>(a.trials);
        row.median_sample_requirement = a.requirement.empty() ? 0.0 : median(a.requirement);
        row.seed = a.first->seed;
        out.push_back(std::move(row));
    }
    return out;
}

/**
 * Runs a selection-rate experiment.
 *
 * ER: one connected graph, then trials x |filters| x |m_grid| signal draws.
 * WS: `graphs` connected draws per p, each with trials x |filters| x
 * |m_grid| signal draws. Jobs are evaluated on a worker pool and collected
 * in job order, so output is identical for any worker count.
 */
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult out;
    const ExperimentId exp = cfg.model == Model::ErdosRenyi ? ExperimentId::Er : ExperimentId::Ws;

    if (cfg.model == Model::ErdosRenyi) {
        const double p = cfg.er_p();
        struct Setup {
            PreparedGraph graph;
            std::vector<PreparedFilter> filters;
        };
        std::vector<Setup> setups;
        for (std::size_t g = 0; g < cfg.graphs; ++g) {
            Setup s{prepare_graph(draw_connected(cfg.model, cfg.n, 0, p, cfg.master_seed, exp, g)), {}};
            for (const auto& f : cfg.filters) s.filters.push_back(prepare_filter(s.graph, f));
            setups.push_back(std::move(s));
        }
        const std::size_t nf = cfg.filters.size();
        const std::size_t nm = cfg.m_grid.size();
        const std::size_t per_graph = nf * cfg.trials * nm;
        // job order: (filter, graph_id, trial_id, m)
        out.records = parallel_map(per_graph * cfg.graphs, cfg.workers, [&](std::size_t job) {
            const std::size_t mi = job % nm;
            const std::size_t t = (job / nm) % cfg.trials;
            const std::size_t g = (job / (nm * cfg.trials)) % cfg.graphs;
            const std::size_t fi = job / (nm * cfg.trials * cfg.graphs);
            const std::int64_t m = cfg.m_grid[mi];
            const TrialContext ctx{model_tag(cfg.model), 0, p, g, t, cfg.master_seed};
            const auto& f = setups[g].filters[fi];
            return run_trial(setups[g].graph, f, m, signal_seed(cfg.master_seed, exp, p, g, f.name, m, t), ctx);
        });
        for (std::size_t g = 0; g < cfg.graphs; ++g) {
            for (const auto& f : setups[g].filters) {
                const auto& pg = setups[g].graph;
                out.graphs.push_back({model_tag(cfg.model), cfg.n, 0, p, g, f.name, pg.graph.edge_count(), f.delta,
                                      pg.centrality.min_entry(), pg.centrality.values.maxCoeff(),
                                      sample_requirement(pg.centrality, f.delta), pg.hash, cfg.master_seed});
            }
        }
    } else {
        struct GraphJob {
            std::vector<TrialRecord> records;
            std::vector<GraphRow> graphs;
        };
        const std::size_t ng = cfg.graphs;
        auto jobs = parallel_map(cfg.p_list.size() * ng, cfg.workers, [&](std::size_t job) {
            const double p = cfg.p_list[job / ng];
            const std::size_t g = job % ng;
            GraphJob result;
            const PreparedGraph pg = prepare_graph(draw_connected(cfg.model, cfg.n, cfg.k, p, cfg.master_seed, exp, g));
            for (const auto& name : cfg.filters) {
                const PreparedFilter f = prepare_filter(pg, name);
                result.graphs.push_back({model_tag(cfg.model), cfg.n, cfg.k, p, g, name, pg.graph.edge_count(),
                                         f.delta, pg.centrality.min_entry(), pg.centrality.values.maxCoeff(),
                                         sample_requirement(pg.centrality, f.delta), pg.hash, cfg.master_seed});
                for (std::size_t t = 0; t < cfg.trials; ++t) {
                    for (std::int64_t m : cfg.m_grid) {
                        const TrialContext ctx{model_tag(cfg.model), cfg.k, p, g, t, cfg.master_seed};
                        result.records.push_back(
                            run_trial(pg, f, m, signal_seed(cfg.master_seed, exp, p, g, name, m, t), ctx));
                    }
                }
            }
            return result;
        });
        for (auto& j : jobs) {
            out.records.insert(out.records.end(), j.records.begin(), j.records.end());
            out.graphs.insert(out.graphs.end(), j.graphs.begin(), j.graphs.end());
        }
    }
    out.rates = summarize_rates(out.records, cfg);
    return out;
}

template <class Row>
void write_rows(std::ostream& out, const std::vector<std::string>& header, const std::vector<Row>& rows) {
    CsvWriter w(out);
    w.row(header);
    for (const auto& r : rows) w.row(to_fields(r));
}

template <class Row>
void save_rows(const std::filesystem::path& path, const std::vector<std::string>& header, const std::vector<Row>& rows) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    write_rows(out, header, rows);
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Eigengap table

struct EigengapRow {
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 0.0;
    std::string filter;
    std::size_t reps = 0;
    double mean_delta = 0.0;
    double var_delta = 0.0;  ///< population variance (1/reps)
    double min_delta = 0.0;
    double max_delta = 0.0;
    std::uint64_t seed = 0;
};

inline const std::vector<std::string>& eigengap_header() {
    static const std::vector<std::string> h{"n", "k", "p", "filter", "reps", "mean_delta", "var_delta",
                                            "min_delta", "max_delta", "seed"};
    return h;
}

inline std::vector<std::string> to_fields(const EigengapRow& r) {
    return {std::to_string(r.n), std::to_string(r.k), format_double(r.p), r.filter, std::to_string(r.reps),
            format_double(r.mean_delta), format_double(r.var_delta), format_double(r.min_delta),
            format_double(r.max_delta), std::to_string(r.seed)};
}

/// Mean and 1/N variance; data are shifted by the first value so identical
/// samples give a variance of exactly zero.
inline std::pair<double, double> mean_and_variance(const std::vector<double>& x) {
    if (x.empty()) throw Error(ErrorKind::InvalidArgument, "empty sample");
    const double shift = x.front();
    double s = 0.0;
    for (double v : x) s += v - shift;
    const double mean_shifted = s / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - shift - mean_shifted) * (v - shift - mean_shifted);
    return {shift + mean_shifted, ss / static_cast<double>(x.size())};
}

struct EigengapTableConfig {
    std::size_t n = 500;
    std::size_t k = 4;
    std::vector<double> p_list{0.0, 0.001, 0.01, 0.1, 1.0};
    std::size_t reps = 100;
    std::string filter = "sqrt";
    std::uint64_t seed = 0;
    std::size_t workers = 1;
};

/// Per-draw deltas, grouped by p in config order.
inline std::vector<std::vector<double>> eigengap_samples(const EigengapTableConfig& cfg) {
    if (cfg.reps < 1) throw Error(ErrorKind::InvalidArgument, "reps must be at least 1");
    const FilterSpec spec = parse_filter(cfg.filter);
    auto deltas = parallel_map(cfg.p_list.size() * cfg.reps, cfg.workers, [&](std::size_t job) {
        const double p = cfg.p_list[job / cfg.reps];
        const Graph g = draw_connected(Model::WattsStrogatz, cfg.n, cfg.k, p, cfg.seed, ExperimentId::EigengapTable,
                                       job % cfg.reps);
        return centrality_eigengap(spec, eigvals_sym(adjacency(g).entries));
    });
    std::vector<std::vector<double>> out(cfg.p_list.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) out[i / cfg.reps].push_back(deltas[i]);
    return out;
}

inline std::vector<EigengapRow> eigengap_table(const EigengapTableConfig& cfg) {
    const auto samples = eigengap_samples(cfg);
    std::vector<EigengapRow> rows;
    for (std::size_t i = 0; i < cfg.p_list.size(); ++i) {
        const auto [mean, var] = mean_and_variance(samples[i]);
        rows.push_back({cfg.n, cfg.k, cfg.p_list[i], cfg.filter, cfg.reps, mean, var,
                        *std::min_element(samples[i].begin(), samples[i].end()),
                        *std::max_element(samples[i].begin(), samples[i].end()), cfg.seed});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Localization profiles

struct ProfileRow {
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 0.0;
    std::size_t node = 0;
    double centrality = 0.0;
    double reference = 0.0;  ///< 1/sqrt(n)
    std::uint64_t seed = 0;
};

inline const std::vector<std::string>& profile_header() {
    static const std::vector<std::string> h{"n", "k", "p", "node", "centrality", "reference", "seed"};
    return h;
}

inline std::vector<std::string> to_fields(const ProfileRow& r) {
    return {std::to_string(r.n), std::to_string(r.k), format_double(r.p), std::to_string(r.node),
            format_double(r.centrality), format_double(r.reference), std::to_string(r.seed)};
}

/// max_i u_i / median_i u_i.
inline double peak_to_median(const Vector& u) {
    std::vector<double> v(u.begin(), u.end());
    const double med = median(v);
    if (!(med > 0.0)) throw Error(ErrorKind::ZeroEntry, "median centrality is zero");
    return u.maxCoeff() / med;
}

/// Centrality of one connected WS draw per p.
inline std::vector<CentralityVector> localization_centralities(std::size_t n, std::size_t k,
                                                               const std::vector<double>& p_list, std::uint64_t seed,
                                                               std::size_t workers = 1) {
    return parallel_map(p_list.size(), workers, [&](std::size_t i) {
        const Graph g = draw_connected(Model::WattsStrogatz, n, k, p_list[i], seed, ExperimentId::Profile, 0);
        return eigenvector_centrality(adjacency(g));
    });
}

inline std::vector<ProfileRow> localization_profile(std::size_t n, std::size_t k, const std::vector<double>& p_list,
                                                    std::uint64_t seed, std::size_t workers = 1) {
    const auto us = localization_centralities(n, k, p_list, seed, workers);
    std::vector<ProfileRow> rows;
    const double ref = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        for (Eigen::Index v = 0; v < us[i].size(); ++v) {
            rows.push_back({n, k, p_list[i], static_cast<std::size_t>(v), us[i].values[v], ref, seed});
        }
    }
    return rows;
}

}  // namespace centsel::harness

#endif  // CENTSEL_HARNESS_EXPERIMENTS_HPP
