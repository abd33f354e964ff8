#ifndef CENTSEL_FILTERS_HPP
#define CENTSEL_FILTERS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "centsel/error.hpp"
#include "centsel/graph.hpp"
#include "centsel/spectral.hpp"

namespace centsel {

/// H(A) = sum_k coefficients[k] * A^k on the raw spectrum of A.
struct PolynomialFilter {
    std::vector<double> coefficients;

    bool operator==(const PolynomialFilter&) const = default;
};

enum class SpectralFunction { Sqrt, Squared, Identity };

/// f applied to the min-max rescaled spectrum; highpass uses 1 - f.
struct SpectralFilter {
    SpectralFunction function = SpectralFunction::Identity;
    bool highpass = false;

    bool operator==(const SpectralFilter&) const = default;
};

class FilterSpec {
public:
    using Kind = std::variant<PolynomialFilter, SpectralFilter>;

    FilterSpec(PolynomialFilter p) : kind_(std::move(p)) {  // NOLINT(google-explicit-constructor)
        const auto& c = std::get<PolynomialFilter>(kind_).coefficients;
        if (c.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial filter needs at least one coefficient");
        for (double g : c) {
            if (!std::isfinite(g)) throw Error(ErrorKind::NonFinite, "polynomial coefficient is not finite");
        }
    }
    FilterSpec(SpectralFilter s) : kind_(s) {}  // NOLINT(google-explicit-constructor)

    static FilterSpec sqrt(bool highpass = false) { return SpectralFilter{SpectralFunction::Sqrt, highpass}; }
    static FilterSpec squared(bool highpass = false) { return SpectralFilter{SpectralFunction::Squared, highpass}; }
    static FilterSpec identity(bool highpass = false) { return SpectralFilter{SpectralFunction::Identity, highpass}; }
    static FilterSpec polynomial(std::vector<double> gamma) { return PolynomialFilter{std::move(gamma)}; }

    const Kind& kind() const noexcept { return kind_; }
    bool is_spectral() const noexcept { return std::holds_alternative<SpectralFilter>(kind_); }

    bool operator==(const FilterSpec&) const = default;

private:
    Kind kind_;
};

/// The four filters used in the experiments, in reporting order.
inline std::vector<FilterSpec> named_experiment_filters() {
    return {FilterSpec::sqrt(), FilterSpec::squared(), FilterSpec::sqrt(true), FilterSpec::squared(true)};
}

/// Inverse of parse_filter; round-trips exactly for the named filters.
inline std::string to_string(const FilterSpec& spec) {
    if (const auto* s = std::get_if<SpectralFilter>(&spec.kind())) {
        std::string name;
        switch (s->function) {
            case SpectralFunction::Sqrt: name = "sqrt"; break;
            case SpectralFunction::Squared: name = "squared"; break;
            case SpectralFunction::Identity: name = "identity"; break;
        }
        return s->highpass ? name + "-hp" : name;
    }
    const auto& c = std::get<PolynomialFilter>(spec.kind()).coefficients;
    std::ostringstream out;
    out.precision(17);
    out << "poly:";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out << ',';
        out << c[i];
    }
    return out.str();
}

/// Grammar: sqrt | squared | identity, optionally suffixed "-hp", or poly:g0,g1,...,gT.
inline FilterSpec parse_filter(std::string_view text) {
    static constexpr std::string_view kHp = "-hp";
    if (text.rfind("poly:", 0) == 0) {
        std::vector<double> gamma;
        std::string body(text.substr(5));
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                gamma.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::logic_error&) {
                throw Error(ErrorKind::InvalidArgument, "bad polynomial coefficient '" + item + "'");
            }
        }
        if (gamma.empty() || body.empty() || body.back() == ',') {
            throw Error(ErrorKind::InvalidArgument, "poly: needs a comma-separated coefficient list");
        }
        return FilterSpec::polynomial(std::move(gamma));
    }
    bool highpass = false;
    if (text.size() > kHp.size() && text.substr(text.size() - kHp.size()) == kHp) {
        highpass = true;
        text.remove_suffix(kHp.size());
    }
    if (text == "sqrt") return FilterSpec::sqrt(highpass);
    if (text == "squared") return FilterSpec::squared(highpass);
    if (text == "identity") return FilterSpec::identity(highpass);
    throw Error(ErrorKind::InvalidArgument, "unknown filter '" + std::string(text) + "'");
}

namespace detail {

inline double spectral_value(SpectralFunction f, double x) {
    x = std::clamp(x, 0.0, 1.0);
    switch (f) {
        case SpectralFunction::Sqrt: return std::sqrt(x);
        case SpectralFunction::Squared: return x * x;
        case SpectralFunction::Identity: return x;
    }
    return x;
}

inline double horner(const std::vector<double>& gamma, double x) {
    double acc = 0.0;
    for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace detail

/// H(lambda) for every eigenvalue of A, in the given order.
inline Vector filter_spectrum(const FilterSpec& spec, const Vector& eigenvalues) {
    if (const auto* s = std::get_if<SpectralFilter>(&spec.kind())) {
        const RescaledSpectrum scaled = rescale_unit_interval(eigenvalues);
        return scaled.values.unaryExpr([s](double x) {
            const double f = detail::spectral_value(s->function, x);
            return s->highpass ? std::max(0.0, 1.0 - f) : f;
        });
    }
    const auto& gamma = std::get<PolynomialFilter>(spec.kind()).coefficients;
    Vector out = eigenvalues.unaryExpr([&gamma](double x) { return detail::horner(gamma, x); });
    if (!out.allFinite()) throw Error(ErrorKind::NonFinite, "filtered spectrum overflowed");
    return out;
}

/// H(A) together with A's eigenbasis and the filtered spectrum on it.
struct FilterMatrix {
    Matrix entries;
    Vector spectrum;  ///< H(lambda_i), aligned with columns of `eigenvectors`
    Matrix eigenvectors;

    Eigen::Index size() const { return entries.rows(); }
};

inline FilterMatrix apply_filter(const FilterSpec& spec, const SpectralDecomposition& eig_a) {
    FilterMatrix h;
    h.spectrum = filter_spectrum(spec, eig_a.eigenvalues);
    h.eigenvectors = eig_a.eigenvectors;
    h.entries = eig_a.eigenvectors * h.spectrum.asDiagonal() * eig_a.eigenvectors.transpose();
    h.entries = (0.5 * (h.entries + h.entries.transpose())).eval();
    return h;
}

inline FilterMatrix apply_filter(const FilterSpec& spec, const AdjacencyMatrix& a) {
    return apply_filter(spec, eig_sym(a.entries));
}

/**
 * Position of the centrality eigenvector in the ascending spectrum of
 * C_y = H(A)^2: the number of filtered values [H(lambda_k)]^2 strictly below
 * [H(lambda_max)]^2. `eigenvalues` must be ascending, so lambda_max is last.
 */
inline Eigen::Index centrality_index_in_cy(const FilterSpec& spec, const Vector& eigenvalues) {
    const Eigen::Index n = eigenvalues.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty spectrum");
    if (n > 1 && eigenvalues[n - 1] - eigenvalues[n - 2] < 1e-12) {
        throw Error(ErrorKind::DegenerateLeadingEigenvalue, "leading eigenvalue of A is not simple");
    }
    const Vector h = filter_spectrum(spec, eigenvalues);
    const double target = h[n - 1] * h[n - 1];
    Eigen::Index below = 0;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const double v = h[k] * h[k];
        if (std::abs(v - target) <= 1e-12) {
            throw Error(ErrorKind::AmbiguousIndex, "filtered centrality eigenvalue ties another eigenvalue");
        }
        if (v < target) ++below;
    }
    return below;
}

}  // namespace centsel

#endif  // CENTSEL_FILTERS_HPP
