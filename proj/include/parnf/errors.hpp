#ifndef PARNF_ERRORS_HPP
#define PARNF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace parnf {

/// Error taxonomy shared by the library and the CLI exit-code contract.
enum class ErrorCode {
    Parse,              // exit 1
    UnsupportedType,    // exit 2
    OracleInconclusive, // exit 3
    AssumptionViolated, // exit 4
    Internal,           // exit 5
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct ParseError : Error {
    ParseError(const std::string& what, size_t position)
        : Error(ErrorCode::Parse, what + " at position " + std::to_string(position)), pos(position) {}
    size_t pos;
};

struct UnsupportedTypeError : Error {
    explicit UnsupportedTypeError(const std::string& what) : Error(ErrorCode::UnsupportedType, what) {}
};

struct MissingAssignmentError : Error {
    explicit MissingAssignmentError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct SingularPointError : Error {
    explicit SingularPointError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct NotInLieAlgebraError : Error {
    explicit NotInLieAlgebraError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct NotUnipotentError : Error {
    explicit NotUnipotentError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct NotInBigCellError : Error {
    explicit NotInBigCellError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct DivisionByZeroOperatorError : Error {
    explicit DivisionByZeroOperatorError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct UnsupportedLocalDataError : Error {
    explicit UnsupportedLocalDataError(const std::string& what) : Error(ErrorCode::OracleInconclusive, what) {}
};

struct DerivationFailedError : Error {
    explicit DerivationFailedError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct CyclicVectorFailureError : Error {
    explicit CyclicVectorFailureError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct AnsatzExhaustedError : Error {
    AnsatzExhaustedError(const std::string& what, int d1, int d2)
        : Error(ErrorCode::Internal, what + " (bounds d1=" + std::to_string(d1) + ", d2=" + std::to_string(d2) + ")"),
          order_bound(d1), degree_bound(d2) {}
    int order_bound, degree_bound;
};

struct AssumptionViolatedError : Error {
    explicit AssumptionViolatedError(const std::string& what) : Error(ErrorCode::AssumptionViolated, what) {}
};

struct OrderDropError : Error {
    explicit OrderDropError(const std::string& what) : Error(ErrorCode::AssumptionViolated, what) {}
};

struct MembershipFailedError : Error {
    explicit MembershipFailedError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct SingularGaugeError : Error {
    explicit SingularGaugeError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

struct OracleInconclusiveError : Error {
    explicit OracleInconclusiveError(const std::string& what) : Error(ErrorCode::OracleInconclusive, what) {}
};

} // namespace parnf

#endif
