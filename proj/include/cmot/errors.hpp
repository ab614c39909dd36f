#ifndef CMOT_ERRORS_HPP
#define CMOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmot {

/// Domain error with a stable machine-readable code; the CLI maps these to
/// exit status 1 and a structured JSON report on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline Error parse_error(const std::string& m) { return Error("ParseError", m); }
inline Error non_invertible_tau(const std::string& m) { return Error("NonInvertibleTau", m); }
inline Error forbidden_zero_locus(const std::string& m) { return Error("ForbiddenZeroLocus", m); }
inline Error chardata_mismatch(const std::string& m) { return Error("ChardataMismatch", m); }
inline Error descent_failure(const std::string& m) { return Error("DescentFailure", m); }
inline Error bound_exhausted(const std::string& m) { return Error("BoundExhausted", m); }
inline Error separability_violation(const std::string& m) { return Error("SeparabilityViolation", m); }
inline Error bad_auxiliary_place(const std::string& m) { return Error("BadAuxiliaryPlace", m); }
inline Error not_tau_stable(const std::string& m) { return Error("NotTauStable", m); }
inline Error precision_too_low(const std::string& m) { return Error("PrecisionTooLow", m); }
inline Error extension_cap_exceeded(const std::string& m) { return Error("ExtensionCapExceeded", m); }
inline Error reducible_input(const std::string& m) { return Error("ReducibleInput", m); }
inline Error weil_violation(const std::string& m) { return Error("WeilViolation", m); }
inline Error not_semisimple(const std::string& m) { return Error("NotSemisimple", m); }
inline Error bad_input(const std::string& m) { return Error("BadInput", m); }

} // namespace cmot

#endif
