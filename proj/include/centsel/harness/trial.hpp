#ifndef CENTSEL_HARNESS_TRIAL_HPP
#define CENTSEL_HARNESS_TRIAL_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "centsel/error.hpp"
#include "centsel/filters.hpp"
#include "centsel/graph.hpp"
#include "centsel/harness/config.hpp"
#include "centsel/harness/csv.hpp"
#include "centsel/random.hpp"
#include "centsel/selection.hpp"
#include "centsel/signals.hpp"
#include "centsel/spectral.hpp"

namespace centsel::harness {

// Seed derivation
// ---------------
// Every random stream is derive_seed(master_seed, {...}) with:
//   graph draw:  {experiment, bits(p), graph_id, attempt}
//   signals:     {experiment, bits(p), graph_id, fnv(filter), m, trial_id}
// where experiment is one of the ids below, bits(p) is the IEEE-754 bit
// pattern of p and fnv is FNV-1a over the filter string. All of these are
// columns of the results CSV, so any row can be regenerated alone.

enum class ExperimentId : std::uint64_t { Er = 1, Ws = 2, EigengapTable = 3, Profile = 4, Cli = 5 };

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t graph_seed(std::uint64_t master, ExperimentId exp, double p, std::uint64_t graph_id,
                                std::uint64_t attempt) {
    return derive_seed(master, {static_cast<std::uint64_t>(exp), std::bit_cast<std::uint64_t>(p), graph_id, attempt});
}

inline std::uint64_t signal_seed(std::uint64_t master, ExperimentId exp, double p, std::uint64_t graph_id,
                                 std::string_view filter, std::int64_t m, std::uint64_t trial_id) {
    return derive_seed(master, {static_cast<std::uint64_t>(exp), std::bit_cast<std::uint64_t>(p), graph_id,
                                fnv1a(filter), static_cast<std::uint64_t>(m), trial_id});
}

inline constexpr int kMaxConnectivityAttempts = 100;

/// Draws from the model until connected; NotConnected after 100 failures.
inline Graph draw_connected(Model model, std::size_t n, std::size_t k, double p, std::uint64_t master,
                            ExperimentId exp, std::uint64_t graph_id) {
    for (int attempt = 0; attempt < kMaxConnectivityAttempts; ++attempt) {
        Rng rng(graph_seed(master, exp, p, graph_id, static_cast<std::uint64_t>(attempt)));
        Graph g = model == Model::ErdosRenyi ? erdos_renyi(n, p, rng) : watts_strogatz(n, k, p, rng);
        if (is_connected(g)) return g;
    }
    throw Error(ErrorKind::NotConnected, "no connected draw in " + std::to_string(kMaxConnectivityAttempts) +
                                             " attempts (model " + model_tag(model) + ", p=" + format_double(p) + ")");
}

/// Ground truth for one graph: A, its decomposition and centrality.
struct PreparedGraph {
    Graph graph;
    AdjacencyMatrix adjacency;
    SpectralDecomposition eig;
    CentralityVector centrality;
    std::uint64_t hash = 0;
};

inline PreparedGraph prepare_graph(Graph g) {
    if (!is_connected(g)) throw Error(ErrorKind::NotConnected, "graph is not connected");
    PreparedGraph out{std::move(g), {}, {}, {}, 0};
    out.adjacency = adjacency(out.graph);
    out.eig = eig_sym(out.adjacency.entries);
    out.centrality = centrality_from_decomposition(out.eig);
    out.hash = graph_hash(out.graph);
    return out;
}

/// Filter-dependent ground truth: H(A), C_y and where u sits in C_y's spectrum.
struct PreparedFilter {
    std::string name;
    FilterMatrix h;
    CovarianceMatrix population;
    Eigen::Index centrality_index = 0;
    double delta = 0.0;  ///< eigengap of C_y at centrality_index
};

/// Eigengap of C_y = H(A)^2 at the centrality index, from A's eigenvalues alone.
inline double centrality_eigengap(const FilterSpec& spec, const Vector& eigenvalues_a, Eigen::Index* index = nullptr) {
    const Eigen::Index j = centrality_index_in_cy(spec, eigenvalues_a);
    Vector cy = filter_spectrum(spec, eigenvalues_a).cwiseAbs2();
    std::sort(cy.begin(), cy.end());
    if (index) *index = j;
    return eigengap_at(cy, j);
}

inline PreparedFilter prepare_filter(const PreparedGraph& g, const std::string& name) {
    const FilterSpec spec = parse_filter(name);
    PreparedFilter out;
    out.name = name;
    out.h = apply_filter(spec, g.eig);
    out.population = population_covariance(out.h);
    out.delta = centrality_eigengap(spec, g.eig.eigenvalues, &out.centrality_index);
    return out;
}

/// Labels copied into the record; they do not influence the computation.
struct TrialContext {
    std::string model = "er";
    std::size_t k = 0;
    double p = 0.0;
    std::size_t graph_id = 0;
    std::size_t trial_id = 0;
    std::uint64_t master_seed = 0;
};

struct TrialRecord {
    std::string model;
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 0.0;
    std::string filter;
    std::int64_t m = 0;
    std::size_t graph_id = 0;
    std::size_t trial_id = 0;
    std::optional<Eigen::Index> chosen_index;
    std::optional<Eigen::Index> optimal_index;
    bool correct = false;
    double cos_true = std::numeric_limits<double>::quiet_NaN();
    double score = std::numeric_limits<double>::quiet_NaN();
    double delta = 0.0;
    double min_u = 0.0;
    std::uint64_t seed = 0;  ///< master seed; the row's other fields complete the derivation
    std::string error;       ///< empty on success

    bool operator==(const TrialRecord&) const = default;
};

inline const std::vector<std::string>& results_header() {
    static const std::vector<std::string> h{"model", "n", "k", "p", "filter", "m", "graph_id", "trial_id",
                                            "chosen_index", "optimal_index", "correct", "cos_true", "score",
                                            "delta", "min_u", "seed"};
    return h;
}

inline std::vector<std::string> to_fields(const TrialRecord& r) {
    auto opt = [](const std::optional<Eigen::Index>& v) { return v ? std::to_string(*v) : std::string(); };
    return {r.model,
            std::to_string(r.n),
            std::to_string(r.k),
            format_double(r.p),
            r.filter,
            format_m(r.m),
            std::to_string(r.graph_id),
            std::to_string(r.trial_id),
            opt(r.chosen_index),
            opt(r.optimal_index),
            r.correct ? "1" : "0",
            r.error.empty() ? format_double(r.cos_true) : std::string(),
            r.error.empty() ? format_double(r.score) : std::string(),
            format_double(r.delta),
            format_double(r.min_u),
            std::to_string(r.seed)};
}

/**
 * One pass of the pipeline: H(A) -> signals -> sample covariance ->
 * selection -> comparison with the oracle index. All randomness comes from
 * `seed`. m == kPopulationSamples runs selection on C_y itself. Library
 * errors are caught and recorded in `error`; the record is still returned.
 */
inline TrialRecord run_trial(const PreparedGraph& g, const PreparedFilter& f, std::int64_t m, std::uint64_t seed,
                             const TrialContext& ctx, const SignalOptions& signal_options = {}) {
    TrialRecord r;
    r.model = ctx.model;
    r.n = g.graph.size();
    r.k = ctx.k;
    r.p = ctx.p;
    r.filter = f.name;
    r.m = m;
    r.graph_id = ctx.graph_id;
    r.trial_id = ctx.trial_id;
    r.delta = f.delta;
    r.min_u = g.centrality.min_entry();
    r.seed = ctx.master_seed;
    try {
        CovarianceMatrix cov;
        if (m == kPopulationSamples) {
            cov = f.population;
        } else {
            SignalOptions opts = signal_options;
            opts.provenance = {seed, f.name, g.hash};
            cov = sample_covariance(generate_signals(f.h, m, seed, opts));
        }
        const SelectionResult sel = select_centrality(cov, g.centrality);
        r.chosen_index = sel.chosen_index;
        r.optimal_index = *sel.diagnostics.optimal_index;
        r.correct = selection_correct(sel, *r.optimal_index);
        r.cos_true = *sel.diagnostics.cos_true;
        r.score = sel.scores[sel.chosen_index];
    } catch (const Error& e) {
        r.error = std::string(to_string(e.kind()));
        r.correct = false;
    }
    return r;
}

}  // namespace centsel::harness

#endif  // CENTSEL_HARNESS_TRIAL_HPP
