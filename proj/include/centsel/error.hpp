#ifndef CENTSEL_ERROR_HPP
#define CENTSEL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace centsel {

enum class ErrorKind {
    InvalidArgument,
    NotConnected,
    DegenerateLeadingEigenvalue,
    NonFinite,
    SingleEigenvalue,
    DegenerateSpectrum,
    AmbiguousIndex,
    ZeroVector,
    DimensionMismatch,
    ZeroEigengap,
    ZeroEntry,
    Io,
    Parse,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NotConnected: return "NotConnected";
        case ErrorKind::DegenerateLeadingEigenvalue: return "DegenerateLeadingEigenvalue";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::SingleEigenvalue: return "SingleEigenvalue";
        case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorKind::AmbiguousIndex: return "AmbiguousIndex";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ZeroEigengap: return "ZeroEigengap";
        case ErrorKind::ZeroEntry: return "ZeroEntry";
        case ErrorKind::Io: return "Io";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace centsel

#endif  // CENTSEL_ERROR_HPP
