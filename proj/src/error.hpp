#pragma once

#include <stdexcept>
#include <string>

namespace etf {

enum class Errc {
    invalid_argument = 1,
    not_hermitian = 2,
    no_convergence = 3,
    spectrum_mismatch = 4,
    unsupported = 5,
    internal = 6,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace etf
