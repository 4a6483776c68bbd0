#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistlab {

enum class ErrorCode {
    ZeroInput,
    BothZero,
    OutOfRange,
    SingularModel,
    NotSquarefree,
    BadReductionPrime,
    PrecisionExhausted,
    UnsupportedPlace,
    NotAdmissible,
    OutOfDomain,
    WrongTorsion,
    HypothesesFail,
    FamilyCheckFailed,
    NotOddPrime,
    InvalidAction,
    UnresolvedPlace,
    InconsistentDescriptor,
    InvalidInput,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace twistlab
