// types.hpp — shared aliases and the error type used across the library

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace polaron {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class ErrorCode {
    invalid_argument,
    dimension_mismatch,
    parse_error,
    budget_exceeded,
    singular_node,
    symmetry_violation,
    solver_failure,
    hypothesis_not_satisfied,
    io_error,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::dimension_mismatch: return "dimension_mismatch";
        case ErrorCode::parse_error: return "parse_error";
        case ErrorCode::budget_exceeded: return "budget_exceeded";
        case ErrorCode::singular_node: return "singular_node";
        case ErrorCode::symmetry_violation: return "symmetry_violation";
        case ErrorCode::solver_failure: return "solver_failure";
        case ErrorCode::hypothesis_not_satisfied: return "hypothesis_not_satisfied";
        case ErrorCode::io_error: return "io_error";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace polaron
