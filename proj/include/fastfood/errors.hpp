#pragma once

#include <stdexcept>
#include <string>

namespace fastfood {

// Malformed or inconsistent input data (bad table cells, ragged rows, ...).
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (factorization breakdown, PSD violation, ...).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg)
        : std::runtime_error(msg) {}
};

}  // namespace fastfood
