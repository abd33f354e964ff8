// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "centsel/centsel.hpp"
#include "centsel/harness/cli.hpp"
#include "centsel/harness/experiments.hpp"
#include "oracle/jacobi.hpp"
#include "test_util.hpp"

using namespace centsel;
using namespace centsel::harness;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

// Test-side reimplementation of the named spectral filters on the oracle spectrum.
double reference_filter(const std::string& name, double x) {
    const bool hp = name.size() > 3 && name.ends_with("-hp");
    const std::string base = hp ? name.substr(0, name.size() - 3) : name;
    double f = base == "sqrt" ? std::sqrt(x) : x * x;
    return hp ? 1.0 - f : f;
}

Outcome ac1() {
    Rng rng(derive_seed(kSeed, {1}));
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const std::array<const char*, 4> named{"sqrt", "squared", "sqrt-hp", "squared-hp"};
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const Graph g = testutil::random_connected_graph(rng, 3, 30);
        const AdjacencyMatrix a = adjacency(g);
        const oracle::Dense ad = testutil::to_dense(a.entries);
        const auto oe = oracle::jacobi_eigen(ad);
        const std::size_t n = oe.values.size();
        oracle::Dense h;
        FilterSpec spec = FilterSpec::sqrt();
        const int pick = static_cast<int>(rng() % 5);
        if (pick < 4) {
            spec = parse_filter(named[pick]);
            const double lo = oe.values.front(), hi = oe.values.back();
            h.assign(n, std::vector<double>(n, 0.0));
            for (std::size_t k = 0; k < n; ++k) {
                const double x = std::clamp((oe.values[k] - lo) / (hi - lo), 0.0, 1.0);
                const double f = reference_filter(named[pick], x);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) h[i][j] += f * oe.vectors[k][i] * oe.vectors[k][j];
            }
        } else {
            // coefficients scaled by powers of the spectral radius keep H(A) entries O(1)
            std::vector<double> gamma(1 + rng() % 6);
            const double rho = oe.values.back();
            for (std::size_t k = 0; k < gamma.size(); ++k) gamma[k] = coef(rng) / std::pow(rho, static_cast<double>(k));
            spec = FilterSpec::polynomial(gamma);
            h = oracle::horner(gamma, ad);
        }
        const Matrix expected = testutil::from_dense(oracle::matmul(h, h));
        const CovarianceMatrix cy = population_covariance(apply_filter(spec, a));
        worst = std::max(worst, (cy.entries - expected).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-8, "max entry error " + fmt(worst) + " (tol 1e-8)"};
}

Outcome ac2() {
    Rng rng(derive_seed(kSeed, {2}));
    double worst_sin = 0.0;
    int index_mismatch = 0, checked = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const Graph g = testutil::random_connected_graph(rng, 3, 30);
        const SpectralDecomposition eig = eig_sym(adjacency(g).entries);
        const CentralityVector u = centrality_from_decomposition(eig);
        for (const auto& spec : named_experiment_filters()) {
            const SelectionResult r = select_centrality(population_covariance(apply_filter(spec, eig)));
            worst_sin = std::max(worst_sin, sin_angle(r.estimate, u.values));
            if (r.chosen_index != centrality_index_in_cy(spec, eig.eigenvalues)) ++index_mismatch;
            ++checked;
        }
    }
    return {worst_sin <= 1e-7 && index_mismatch == 0,
            std::to_string(checked) + " cases, max sin " + fmt(worst_sin) + ", index mismatches " +
                std::to_string(index_mismatch)};
}

AlignmentCheck& alignment_sweep() {
    static AlignmentCheck check = [] {
        Rng rng(derive_seed(kSeed, {3}));
        Graph g = erdos_renyi(50, 0.2, rng);
        while (!is_connected(g)) g = erdos_renyi(50, 0.2, rng);
        const std::array<std::int64_t, 5> grid{250, 500, 1000, 2000, 4000};
        return empirical_alignment_check(g, FilterSpec::sqrt(), grid, 20, derive_seed(kSeed, {3, 1}));
    }();
    return check;
}

Outcome ac3() {
    const AlignmentCheck& c = alignment_sweep();
    std::string med;
    for (double d : c.median_deviation) med += (med.empty() ? "" : ",") + fmt(d);
    return {c.deviation_slope >= -0.65 && c.deviation_slope <= -0.35,
            "slope " + fmt(c.deviation_slope) + " in [-0.65,-0.35]; medians " + med};
}

Outcome ac4() {
    const AlignmentCheck& c = alignment_sweep();
    return {c.bound_coverage >= 0.95, "same sweep as AC3; coverage " + fmt(c.bound_coverage) + " (>= 0.95), fitted c " +
                                          fmt(c.fitted_constant) + ", delta " + fmt(c.delta) + ", sin slope " +
                                          fmt(c.sin_theta_slope)};
}

double rate_of(const std::vector<RateRow>& rows, const std::string& filter, double p, std::int64_t m) {
    for (const auto& r : rows) {
        if (r.filter == filter && r.p == p && r.m == m) return r.rate;
    }
    throw std::runtime_error("missing rate cell");
}

Outcome ac5() {
    ExperimentConfig cfg = default_er_config();
    cfg.filters = {"sqrt", "squared"};
    cfg.trials = 200;
    cfg.master_seed = kSeed;
    const ExperimentResult r = run_experiment(cfg);
    const double p = cfg.er_p();
    bool ordered = true;
    std::string sq, sr;
    for (std::int64_t m : cfg.m_grid) {
        const double a = rate_of(r.rates, "squared", p, m), b = rate_of(r.rates, "sqrt", p, m);
        ordered = ordered && a >= b;
        sq += (sq.empty() ? "" : ",") + fmt(a);
        sr += (sr.empty() ? "" : ",") + fmt(b);
    }
    bool grows = true;
    for (const char* f : {"sqrt", "squared"}) {
        const double lo = rate_of(r.rates, f, p, 100), hi = rate_of(r.rates, f, p, 1000);
        grows = grows && (hi - lo >= 0.05 || hi >= 0.99);
    }
    return {ordered && grows, "squared [" + sq + "] sqrt [" + sr + "]; ordered=" + std::to_string(ordered) +
                                  " grows=" + std::to_string(grows)};
}

Outcome ac6() {
    ExperimentConfig cfg = default_ws_config();
    cfg.graphs = 25;
    cfg.m_grid = {500, 2000};
    cfg.master_seed = kSeed;
    const ExperimentResult r = run_experiment(cfg);
    std::string rates;
    for (double p : cfg.p_list) rates += (rates.empty() ? "" : ", ") + ("p=" + fmt(p) + ":" + fmt(rate_of(r.rates, "sqrt", p, 2000)));
    const double r1 = rate_of(r.rates, "sqrt", 1.0, 2000), r01 = rate_of(r.rates, "sqrt", 0.1, 2000);
    const double r001 = rate_of(r.rates, "sqrt", 0.01, 2000), r0001 = rate_of(r.rates, "sqrt", 0.001, 2000);
    const bool ok = std::min(r1, r01) >= std::max(r001, r0001);
    return {ok, "rates at m=2000: " + rates};
}

Outcome ac7() {
    EigengapTableConfig cfg;
    cfg.reps = 100;
    cfg.seed = kSeed;
    const auto rows = eigengap_table(cfg);
    bool increasing = true;
    std::string means;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i && !(rows[i].mean_delta > rows[i - 1].mean_delta)) increasing = false;
        means += (means.empty() ? "" : ",") + fmt(rows[i].mean_delta);
    }
    const double d0 = rows.front().mean_delta, d1 = rows.back().mean_delta;
    const bool var0 = rows.front().var_delta == 0.0;
    const bool f1 = d1 >= 0.127 / 2 && d1 <= 0.127 * 2;
    const bool f0 = d0 >= 1.97e-4 / 2 && d0 <= 1.97e-4 * 2;
    return {increasing && var0 && f1 && f0, "means [" + means + "]; p=0 var " + fmt(rows.front().var_delta) +
                                                "; p=1 ratio " + fmt(d1 / 0.127) + "; p=0 ratio " + fmt(d0 / 1.97e-4)};
}

Outcome ac8() {
    std::array<std::vector<double>, 2> req;
    const std::array<double, 2> ps{0.01, 1.0};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::uint64_t g = 0; g < 50; ++g) {
            const PreparedGraph pg =
                prepare_graph(draw_connected(Model::WattsStrogatz, 500, 4, ps[i], kSeed, ExperimentId::Ws, 1000 + g));
            const PreparedFilter f = prepare_filter(pg, "sqrt");
            req[i].push_back(sample_requirement(pg.centrality, f.delta));
        }
    }
    const double m001 = median(req[0]), m1 = median(req[1]);
    return {m1 < m001, "median requirement p=0.01 " + fmt(m001) + ", p=1 " + fmt(m1)};
}

Outcome ac9() {
    const std::vector<double> ps{0.0, 0.001, 0.01, 0.1, 1.0};
    std::vector<std::vector<double>> ratios(ps.size());
    double flat_err = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto us = localization_centralities(500, 4, ps, derive_seed(kSeed, {9, s}));
        flat_err = std::max(flat_err, (us[0].values.array() - 1.0 / std::sqrt(500.0)).abs().maxCoeff());
        for (std::size_t i = 1; i < ps.size(); ++i) ratios[i].push_back(peak_to_median(us[i].values));
    }
    bool decreasing = true;
    std::string meds;
    for (std::size_t i = 1; i < ps.size(); ++i) {
        if (i > 1 && !(median(ratios[i]) < median(ratios[i - 1]))) decreasing = false;
        meds += (meds.empty() ? "" : ",") + fmt(median(ratios[i]));
    }
    return {flat_err <= 1e-8 && decreasing,
            "p=0 max deviation " + fmt(flat_err) + "; median peak/median for p=0.001..1 [" + meds + "]"};
}

Outcome ac10() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "centsel_acceptance_determinism";
    fs::remove_all(root);
    auto run = [&](const std::string& sub, const char* workers) {
        const std::string dir = (root / sub).string();
        const std::string seed = std::to_string(kSeed);
        const std::vector<std::string> args{"centsel", "experiment", "ws",     "--graphs", "5",   "--m-grid",
                                            "250,1000", "--seed",    seed,     "--workers", workers, "--out-dir", dir};
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    const int c1 = run("w1", "1"), c8 = run("w8", "8"), c1b = run("w1b", "1");
    bool same = c1 == 0 && c8 == 0 && c1b == 0;
    std::size_t bytes = 0;
    for (const char* f : {"results.csv", "rates.csv", "graphs.csv", "errors.csv"}) {
        const std::string a = slurp(root / "w1" / f);
        bytes += a.size();
        same = same && !a.empty() && a == slurp(root / "w8" / f) && a == slurp(root / "w1b" / f);
    }
    fs::remove_all(root);
    return {same, "1 vs 8 vs 1 workers, " + std::to_string(bytes) + " bytes compared"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"AC1", "population covariance equals H(A)H(A)", 10, ac1},
        {"AC2", "exact-covariance recovery, all filters", 30, ac2},
        {"AC3", "sample covariance deviation rate", 120, ac3},
        {"AC4", "sin-theta bound coverage", 120, ac4},
        {"AC5", "ER selection rates (squared vs sqrt)", 600, ac5},
        {"AC6", "WS selection rates by rewiring p", 900, ac6},
        {"AC7", "WS eigengap table", 300, ac7},
        {"AC8", "sample requirement, p=1 vs p=0.01", 120, ac8},
        {"AC9", "localization profiles", 120, ac9},
        {"AC10", "worker-count determinism of experiment ws", 300, ac10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::cout << (pass ? "PASS " : "FAIL ") << c.id << " " << c.name << ": " << o.detail << " [" << fmt(secs)
                  << " s, budget " << fmt(c.budget_s) << " s" << (in_time ? "" : ", OVER BUDGET") << "]" << std::endl;
    }
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
