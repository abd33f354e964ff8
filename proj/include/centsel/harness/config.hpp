#ifndef CENTSEL_HARNESS_CONFIG_HPP
#define CENTSEL_HARNESS_CONFIG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "centsel/error.hpp"
#include "centsel/filters.hpp"
#include "centsel/signals.hpp"

namespace centsel::harness {

enum class Model { ErdosRenyi, WattsStrogatz };

inline std::string model_tag(Model m) { return m == Model::ErdosRenyi ? "er" : "ws"; }

inline std::string format_m(std::int64_t m) { return m == kPopulationSamples ? "inf" : std::to_string(m); }

struct ExperimentConfig {
    Model model = Model::ErdosRenyi;
    std::size_t n = 100;
    std::size_t k = 4;
    double p = std::numeric_limits<double>::quiet_NaN();  ///< ER only; NaN means log(n)/n
    std::vector<double> p_list;                           ///< WS rewiring probabilities
    std::vector<std::string> filters;
    std::vector<std::int64_t> m_grid;
    std::size_t trials = 1;  ///< signal draws per (graph, filter, m)
    std::size_t graphs = 1;  ///< graph draws per p
    std::uint64_t master_seed = 0;
    std::size_t workers = 1;
    std::string out_dir = ".";

    double er_p() const { return std::isnan(p) ? std::log(static_cast<double>(n)) / static_cast<double>(n) : p; }
    std::vector<double> probabilities() const { return model == Model::ErdosRenyi ? std::vector<double>{er_p()} : p_list; }

    void validate() const {
        if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
        if (graphs < 1) throw Error(ErrorKind::InvalidArgument, "graphs must be at least 1");
        if (m_grid.empty()) throw Error(ErrorKind::InvalidArgument, "m grid is empty");
        if (!std::is_sorted(m_grid.begin(), m_grid.end()) ||
            std::adjacent_find(m_grid.begin(), m_grid.end()) != m_grid.end()) {
            throw Error(ErrorKind::InvalidArgument, "m grid must be strictly ascending");
        }
        if (m_grid.front() < 1) throw Error(ErrorKind::InvalidArgument, "m must be at least 1");
        if (filters.empty()) throw Error(ErrorKind::InvalidArgument, "no filters configured");
        for (const auto& f : filters) parse_filter(f);
        if (n < 2) throw Error(ErrorKind::InvalidArgument, "n must be at least 2");
        if (model == Model::WattsStrogatz) {
            if (p_list.empty()) throw Error(ErrorKind::InvalidArgument, "p list is empty");
            if (k % 2 != 0 || k >= n) throw Error(ErrorKind::InvalidArgument, "k must be even and below n");
        }
        for (double q : probabilities()) {
            if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorKind::InvalidArgument, "probabilities must lie in [0, 1]");
        }
    }
};

/// ER(100, log n / n), four filters, m = 100..1000, 200 trials.
inline ExperimentConfig default_er_config() {
    ExperimentConfig c;
    c.model = Model::ErdosRenyi;
    c.n = 100;
    c.filters = {"sqrt", "squared", "sqrt-hp", "squared-hp"};
    for (std::int64_t m = 100; m <= 1000; m += 100) c.m_grid.push_back(m);
    c.trials = 200;
    c.graphs = 1;
    return c;
}

/// WS(500, 4, p), sqrt filter, 100 graphs per p.
inline ExperimentConfig default_ws_config() {
    ExperimentConfig c;
    c.model = Model::WattsStrogatz;
    c.n = 500;
    c.k = 4;
    c.p_list = {0.0, 0.001, 0.01, 0.1, 1.0};
    c.filters = {"sqrt"};
    c.m_grid = {250, 500, 1000, 2000, 4000};
    c.trials = 1;
    c.graphs = 100;
    return c;
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss{std::string(s)};
    while (std::getline(ss, cur, ',')) {
        cur = trim(cur);
        if (cur.empty()) throw Error(ErrorKind::InvalidArgument, "empty item in list '" + std::string(s) + "'");
        out.push_back(cur);
    }
    if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty list");
    return out;
}

template <class T>
T parse_number(const std::string& s) {
    try {
        std::size_t used = 0;
        T v{};
        if constexpr (std::is_floating_point_v<T>) {
            v = static_cast<T>(std::stod(s, &used));
        } else {
            if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
            v = static_cast<T>(std::stoull(s, &used));
        }
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidArgument, "not a valid number: '" + s + "'");
    }
}

}  // namespace detail

inline std::vector<double> parse_p_list(std::string_view text) {
    std::vector<double> out;
    for (const auto& item : detail::split_list(text)) out.push_back(detail::parse_number<double>(item));
    return out;
}

/// "100,200,500", "100:1000:100" (inclusive range) or a mix; "inf" allowed last.
inline std::vector<std::int64_t> parse_m_grid(std::string_view text) {
    std::vector<std::int64_t> out;
    for (const auto& item : detail::split_list(text)) {
        if (item == "inf") {
            out.push_back(kPopulationSamples);
            continue;
        }
        if (item.find(':') != std::string::npos) {
            std::stringstream ss(item);
            std::string a, b, c;
            std::getline(ss, a, ':');
            std::getline(ss, b, ':');
            std::getline(ss, c, ':');
            const auto lo = detail::parse_number<std::int64_t>(detail::trim(a));
            const auto hi = detail::parse_number<std::int64_t>(detail::trim(b));
            const auto step = c.empty() ? std::int64_t{1} : detail::parse_number<std::int64_t>(detail::trim(c));
            if (step < 1 || hi < lo) throw Error(ErrorKind::InvalidArgument, "bad m range '" + item + "'");
            for (std::int64_t m = lo; m <= hi; m += step) out.push_back(m);
            continue;
        }
        out.push_back(detail::parse_number<std::int64_t>(item));
    }
    return out;
}

/// Applies one `key = value` setting; unknown keys are usage errors.
inline void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
    using detail::parse_number;
    if (key == "model") {
        if (value == "er") c.model = Model::ErdosRenyi;
        else if (value == "ws") c.model = Model::WattsStrogatz;
        else throw Error(ErrorKind::InvalidArgument, "model must be er or ws");
    } else if (key == "n") {
        c.n = parse_number<std::size_t>(value);
    } else if (key == "k") {
        c.k = parse_number<std::size_t>(value);
    } else if (key == "p") {
        c.p = value == "auto" ? std::numeric_limits<double>::quiet_NaN() : parse_number<double>(value);
    } else if (key == "p_list") {
        c.p_list = parse_p_list(value);
    } else if (key == "filters") {
        c.filters = detail::split_list(value);
    } else if (key == "m_grid") {
        c.m_grid = parse_m_grid(value);
    } else if (key == "trials") {
        c.trials = parse_number<std::size_t>(value);
    } else if (key == "graphs") {
        c.graphs = parse_number<std::size_t>(value);
    } else if (key == "seed") {
        c.master_seed = parse_number<std::uint64_t>(value);
    } else if (key == "workers") {
        c.workers = parse_number<std::size_t>(value);
    } else if (key == "out_dir") {
        c.out_dir = value;
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown config key '" + key + "'");
    }
}

/// Flat `key = value` lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::InvalidArgument, "config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = detail::trim(std::string_view(t).substr(0, eq));
        std::string value = detail::trim(std::string_view(t).substr(eq + 1));
        if (key.empty()) throw Error(ErrorKind::InvalidArgument, "config line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

inline void apply_config_file(ExperimentConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config " + path);
    for (const auto& [k, v] : parse_key_values(in)) apply_setting(c, k, v);
}

}  // namespace centsel::harness

#endif  // CENTSEL_HARNESS_CONFIG_HPP
