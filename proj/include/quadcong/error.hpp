#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadcong {

enum class Errc {
    NotOddPrime,
    Overflow,
    ModulusMismatch,
    NotUnit,
    PDividesD,
    ContextMismatch,
    NonUnitNorm,
    NonZeroRemainder,
    DivisionByZeroPoly,
    RequiresModP,
    NoRoot,
    Precondition,
};

constexpr std::string_view errc_name(Errc c) noexcept {
    switch (c) {
    case Errc::NotOddPrime: return "NotOddPrime";
    case Errc::Overflow: return "Overflow";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::NotUnit: return "NotUnit";
    case Errc::PDividesD: return "PDividesD";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::NonUnitNorm: return "NonUnitNorm";
    case Errc::NonZeroRemainder: return "NonZeroRemainder";
    case Errc::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case Errc::RequiresModP: return "RequiresModP";
    case Errc::NoRoot: return "NoRoot";
    case Errc::Precondition: return "Precondition";
    }
    return "Unknown";
}

/// Domain error raised by every quadcong operation. The code is stable and
/// meant for programmatic dispatch; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace quadcong
