#pragma once

#include <stdexcept>
#include <string>

namespace gqg {

struct BackendMismatch : std::runtime_error {
    explicit BackendMismatch(const std::string& m) : std::runtime_error("BackendMismatch: " + m) {}
};
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error("ParseError: " + m) {}
};
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& m) : std::runtime_error("CapExceeded: " + m) {}
};
struct RankMismatch : std::runtime_error {
    explicit RankMismatch(const std::string& m) : std::runtime_error("RankMismatch: " + m) {}
};
struct HypothesisViolated : std::runtime_error {
    explicit HypothesisViolated(const std::string& m) : std::runtime_error("HypothesisViolated: " + m) {}
};
struct NotInB : std::runtime_error {
    explicit NotInB(const std::string& m) : std::runtime_error("NotInB: " + m) {}
};
struct IntegralityFailed : std::runtime_error {
    explicit IntegralityFailed(const std::string& m) : std::runtime_error("IntegralityFailed: " + m) {}
};
struct VerificationFailed : std::runtime_error {
    explicit VerificationFailed(const std::string& m) : std::runtime_error("VerificationFailed: " + m) {}
};
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error("ValidationError: " + m) {}
};
struct InternalInconsistency : std::logic_error {
    explicit InternalInconsistency(const std::string& m) : std::logic_error("InternalInconsistency: " + m) {}
};

} // namespace gqg
