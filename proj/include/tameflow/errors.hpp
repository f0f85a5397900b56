#ifndef TAMEFLOW_ERRORS_HPP
#define TAMEFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tameflow {

/// Input violates a documented precondition or structural invariant.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A mathematical certificate that must hold (Morse inequalities, flow
/// identities) failed. Always an implementation defect, never user error.
class CertificateFailure : public std::runtime_error {
public:
    explicit CertificateFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tameflow

#endif
