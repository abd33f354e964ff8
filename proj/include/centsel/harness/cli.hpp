#ifndef CENTSEL_HARNESS_CLI_HPP
#define CENTSEL_HARNESS_CLI_HPP

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "centsel/error.hpp"
#include "centsel/graph.hpp"
#include "centsel/harness/config.hpp"
#include "centsel/harness/csv.hpp"
#include "centsel/harness/experiments.hpp"
#include "centsel/harness/plot.hpp"
#include "centsel/harness/trial.hpp"
#include "centsel/signals.hpp"

namespace centsel::harness {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitIo = 3 };

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return kExitUsage;
        case ErrorKind::Io:
        case ErrorKind::Parse: return kExitIo;
        default: return kExitNumerical;
    }
}

namespace cli_detail {

inline void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create directory " + dir + ": " + ec.message());
}

inline std::string join(const std::string& dir, const char* file) {
    return (std::filesystem::path(dir) / file).string();
}

inline void write_experiment(const ExperimentResult& r, const std::string& dir) {
    ensure_dir(dir);
    save_rows(join(dir, "results.csv"), results_header(), r.records);
    save_rows(join(dir, "rates.csv"), rates_header(), r.rates);
    save_rows(join(dir, "graphs.csv"), graphs_header(), r.graphs);

    std::ofstream errors(join(dir, "errors.csv"));
    if (!errors) throw Error(ErrorKind::Io, "cannot write errors.csv in " + dir);
    CsvWriter w(errors);
    w.row({"model", "p", "filter", "m", "graph_id", "trial_id", "error"});
    for (const auto& rec : r.records) {
        if (!rec.error.empty()) {
            w.row({rec.model, format_double(rec.p), rec.filter, format_m(rec.m), std::to_string(rec.graph_id),
                   std::to_string(rec.trial_id), rec.error});
        }
    }
    CsvTable t;
    t.header = rates_header();
    for (const auto& row : r.rates) t.rows.push_back(to_fields(row));
    save_text(join(dir, "rates.svg"), render_rates_svg(rate_series(t)));
}

}  // namespace cli_detail

/**
 * Entry point of the `centsel` tool.
 *
 * Subcommands: gen, centrality, trial, experiment, eigengap-table, profile,
 * plot. Exit codes: 0 success, 1 usage error, 2 numerical or degeneracy
 * error, 3 I/O error.
 */
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Eigenvector centrality from graph signals: selection experiments"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Draw a connected random graph and write its edge list");
    std::string gen_model;
    std::size_t gen_n = 0;
    std::string gen_p = "auto";
    std::size_t gen_k = 4;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--model", gen_model, "er or ws")->required()->check(CLI::IsMember({"er", "ws"}));
    gen->add_option("--n", gen_n, "node count")->required();
    gen->add_option("--p", gen_p, "edge / rewiring probability, or 'auto' for log(n)/n (er)");
    gen->add_option("--k", gen_k, "ring-lattice degree (ws)");
    gen->add_option("--seed", gen_seed, "random seed")->required();
    gen->add_option("--out", gen_out, "edge-list file")->required();

    // centrality
    auto* cent = app.add_subcommand("centrality", "Eigenvector centrality of a graph file");
    std::string cent_graph;
    std::string cent_out;
    cent->add_option("--graph", cent_graph, "edge-list file")->required();
    cent->add_option("--out", cent_out, "CSV output (node,centrality)")->required();

    // trial
    auto* trial = app.add_subcommand("trial", "Run one selection trial on a graph file");
    std::string trial_graph;
    std::string trial_filter;
    std::string trial_m;
    std::uint64_t trial_seed_value = 0;
    std::string trial_export;
    trial->add_option("--graph", trial_graph, "edge-list file")->required();
    trial->add_option("--filter", trial_filter, "sqrt | squared | sqrt-hp | squared-hp | poly:g0,...,gT")->required();
    trial->add_option("--m", trial_m, "sample count, or 'inf' for the population covariance")->required();
    trial->add_option("--seed", trial_seed_value, "signal seed")->required();
    trial->add_option("--export-signals", trial_export, "write the generated signals as CSV");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Selection-rate sweep over m (er or ws)");
    std::string exp_model;
    std::string exp_config;
    std::string exp_out_dir;
    std::string o_n, o_k, o_p, o_p_list, o_filters, o_m_grid, o_trials, o_graphs, o_seed, o_workers;
    exp->add_option("model", exp_model, "er or ws")->required()->check(CLI::IsMember({"er", "ws"}));
    exp->add_option("--config", exp_config, "flat key = value config file");
    exp->add_option("--out-dir", exp_out_dir, "output directory")->required();
    auto* f_n = exp->add_option("--n", o_n, "node count");
    auto* f_k = exp->add_option("--k", o_k, "ring-lattice degree (ws)");
    auto* f_p = exp->add_option("--p", o_p, "edge probability or 'auto' (er)");
    auto* f_pl = exp->add_option("--p-list", o_p_list, "comma-separated rewiring probabilities (ws)");
    auto* f_f = exp->add_option("--filters", o_filters, "comma-separated filter specs");
    auto* f_m = exp->add_option("--m-grid", o_m_grid, "sample counts: a,b,c or lo:hi:step");
    auto* f_t = exp->add_option("--trials", o_trials, "signal draws per (graph, filter, m)");
    auto* f_g = exp->add_option("--graphs", o_graphs, "graph draws per p");
    auto* f_s = exp->add_option("--seed", o_seed, "master seed");
    auto* f_w = exp->add_option("--workers", o_workers, "worker threads");

    // eigengap-table
    auto* table = app.add_subcommand("eigengap-table", "Mean and variance of the C_y eigengap over WS draws");
    EigengapTableConfig tcfg;
    std::string table_p_list;
    std::string table_out;
    table->add_option("--p-list", table_p_list, "comma-separated rewiring probabilities")->required();
    table->add_option("--reps", tcfg.reps, "draws per p")->required();
    table->add_option("--seed", tcfg.seed, "master seed")->required();
    table->add_option("--out", table_out, "CSV output")->required();
    table->add_option("--n", tcfg.n, "node count");
    table->add_option("--k", tcfg.k, "ring-lattice degree");
    table->add_option("--filter", tcfg.filter, "filter spec");
    table->add_option("--workers", tcfg.workers, "worker threads");

    // profile
    auto* prof = app.add_subcommand("profile", "Per-node centrality of one WS draw per p");
    std::string prof_p_list;
    std::uint64_t prof_seed = 0;
    std::string prof_out_dir;
    std::size_t prof_n = 500;
    std::size_t prof_k = 4;
    prof->add_option("--p-list", prof_p_list, "comma-separated rewiring probabilities")->required();
    prof->add_option("--seed", prof_seed, "master seed")->required();
    prof->add_option("--out-dir", prof_out_dir, "output directory")->required();
    prof->add_option("--n", prof_n, "node count");
    prof->add_option("--k", prof_k, "ring-lattice degree");

    // plot
    auto* plot = app.add_subcommand("plot", "Render a results/rates or profile CSV as SVG");
    std::string plot_in;
    std::string plot_kind;
    std::string plot_out;
    plot->add_option("--in", plot_in, "input CSV")->required();
    plot->add_option("--kind", plot_kind, "rates or profile")->required()->check(CLI::IsMember({"rates", "profile"}));
    plot->add_option("--out", plot_out, "output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            const Model model = gen_model == "er" ? Model::ErdosRenyi : Model::WattsStrogatz;
            double p = 0.0;
            if (gen_p == "auto") {
                if (model == Model::WattsStrogatz) throw Error(ErrorKind::InvalidArgument, "ws needs an explicit --p");
                p = std::log(static_cast<double>(gen_n)) / static_cast<double>(gen_n);
            } else {
                p = detail::parse_number<double>(gen_p);
            }
            const Graph g = draw_connected(model, gen_n, gen_k, p, gen_seed, ExperimentId::Cli, 0);
            save_edge_list(gen_out, g);
            out << "wrote " << gen_out << " (n=" << g.size() << ", edges=" << g.edge_count() << ")\n";
        } else if (cent->parsed()) {
            const Graph g = load_edge_list(cent_graph);
            const CentralityVector u = eigenvector_centrality(adjacency(g));
            std::ofstream f(cent_out);
            if (!f) throw Error(ErrorKind::Io, "cannot open " + cent_out + " for writing");
            CsvWriter w(f);
            w.row({"node", "centrality"});
            for (Eigen::Index i = 0; i < u.size(); ++i) w.row({std::to_string(i), format_double(u.values[i])});
            if (!f) throw Error(ErrorKind::Io, "write failed for " + cent_out);
        } else if (trial->parsed()) {
            const PreparedGraph pg = prepare_graph(load_edge_list(trial_graph));
            const std::string filter = to_string(parse_filter(trial_filter));
            const PreparedFilter pf = prepare_filter(pg, filter);
            const std::int64_t m = trial_m == "inf" ? kPopulationSamples : detail::parse_number<std::int64_t>(trial_m);
            if (m < 1) throw Error(ErrorKind::InvalidArgument, "--m must be at least 1");
            const TrialContext ctx{"file", 0, 0.0, 0, 0, trial_seed_value};
            const TrialRecord rec = run_trial(pg, pf, m, trial_seed_value, ctx);
            if (!trial_export.empty()) {
                if (m == kPopulationSamples) throw Error(ErrorKind::InvalidArgument, "no signals to export for m=inf");
                SignalOptions opts;
                opts.provenance = {trial_seed_value, filter, pg.hash};
                save_signals_csv(trial_export, generate_signals(pf.h, m, trial_seed_value, opts));
            }
            CsvWriter w(out);
            w.row(results_header());
            w.row(to_fields(rec));
            if (!rec.error.empty()) {
                err << "trial failed: " << rec.error << '\n';
                return kExitNumerical;
            }
        } else if (exp->parsed()) {
            ExperimentConfig cfg = exp_model == "er" ? default_er_config() : default_ws_config();
            if (!exp_config.empty()) apply_config_file(cfg, exp_config);
            // the positional model always wins over the config file
            cfg.model = exp_model == "er" ? Model::ErdosRenyi : Model::WattsStrogatz;
            const std::vector<std::pair<CLI::Option*, std::pair<const char*, std::string*>>> flags{
                {f_n, {"n", &o_n}},         {f_k, {"k", &o_k}},           {f_p, {"p", &o_p}},
                {f_pl, {"p_list", &o_p_list}}, {f_f, {"filters", &o_filters}}, {f_m, {"m_grid", &o_m_grid}},
                {f_t, {"trials", &o_trials}}, {f_g, {"graphs", &o_graphs}},   {f_s, {"seed", &o_seed}},
                {f_w, {"workers", &o_workers}}};
            for (const auto& [opt, kv] : flags) {
                if (opt->count() > 0) apply_setting(cfg, kv.first, *kv.second);
            }
            cfg.out_dir = exp_out_dir;
            const ExperimentResult r = run_experiment(cfg);
            cli_detail::write_experiment(r, cfg.out_dir);
            std::size_t failed = 0;
            for (const auto& rec : r.records) failed += rec.error.empty() ? 0 : 1;
            out << "wrote " << r.records.size() << " trial records to " << cfg.out_dir << '\n';
            if (failed) err << "warning: " << failed << " trials failed, see errors.csv\n";
        } else if (table->parsed()) {
            tcfg.p_list = parse_p_list(table_p_list);
            const auto rows = eigengap_table(tcfg);
            save_rows(table_out, eigengap_header(), rows);
        } else if (prof->parsed()) {
            const auto ps = parse_p_list(prof_p_list);
            const auto us = localization_centralities(prof_n, prof_k, ps, prof_seed);
            std::vector<ProfileRow> rows;
            const double ref = 1.0 / std::sqrt(static_cast<double>(prof_n));
            for (std::size_t i = 0; i < ps.size(); ++i) {
                for (Eigen::Index v = 0; v < us[i].size(); ++v) {
                    rows.push_back({prof_n, prof_k, ps[i], static_cast<std::size_t>(v), us[i].values[v], ref, prof_seed});
                }
            }
            cli_detail::ensure_dir(prof_out_dir);
            save_rows(cli_detail::join(prof_out_dir, "profile.csv"), profile_header(), rows);
            std::ofstream summary(cli_detail::join(prof_out_dir, "profile_summary.csv"));
            if (!summary) throw Error(ErrorKind::Io, "cannot write profile_summary.csv");
            CsvWriter w(summary);
            w.row({"n", "k", "p", "min_u", "max_u", "peak_to_median", "seed"});
            for (std::size_t i = 0; i < ps.size(); ++i) {
                w.row({std::to_string(prof_n), std::to_string(prof_k), format_double(ps[i]),
                       format_double(us[i].min_entry()), format_double(us[i].values.maxCoeff()),
                       format_double(peak_to_median(us[i].values)), std::to_string(prof_seed)});
            }
            CsvTable t;
            t.header = profile_header();
            for (const auto& r : rows) t.rows.push_back(to_fields(r));
            save_text(cli_detail::join(prof_out_dir, "profile.svg"), render_profile_svg(profile_panels(t)));
        } else if (plot->parsed()) {
            const CsvTable t = load_csv(plot_in);
            save_text(plot_out, render_plot(t, plot_kind == "rates" ? PlotKind::Rates : PlotKind::Profile));
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace centsel::harness

#endif  // CENTSEL_HARNESS_CLI_HPP
