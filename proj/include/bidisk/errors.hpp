#pragma once

#include <stdexcept>
#include <string>

namespace bidisk {

enum class ErrorCode {
    DenominatorZero,
    DenominatorZeroAtOrigin,
    DegenerateSlice,
    FloatInput,
    ExactRequired,
    NotPSD,
    NotPSDOnCircle,
    NotHermitian,
    RankDeficient,
    SingularDeterminant,
    NoConvergence,
    MismatchedGram,
    DegreeExceeded,
    NotStrictlyPositive,
    CesaroOrderExhausted,
    NotStrictContraction,
    NotIsoInner,
    NotIsoInnerOnCircle,
    RemainderNonzero,
    NotSquare,
    NotInner,
    NotContractiveOnCircle,
    NotContraction,
    SliceUnstable,
    ClearingFailed,
    InconsistentData,
    DimensionMismatch,
    BadInput,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DenominatorZero: return "DenominatorZero";
        case ErrorCode::DenominatorZeroAtOrigin: return "DenominatorZeroAtOrigin";
        case ErrorCode::DegenerateSlice: return "DegenerateSlice";
        case ErrorCode::FloatInput: return "FloatInput";
        case ErrorCode::ExactRequired: return "ExactRequired";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::NotPSDOnCircle: return "NotPSDOnCircle";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::SingularDeterminant: return "SingularDeterminant";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::MismatchedGram: return "MismatchedGram";
        case ErrorCode::DegreeExceeded: return "DegreeExceeded";
        case ErrorCode::NotStrictlyPositive: return "NotStrictlyPositive";
        case ErrorCode::CesaroOrderExhausted: return "CesaroOrderExhausted";
        case ErrorCode::NotStrictContraction: return "NotStrictContraction";
        case ErrorCode::NotIsoInner: return "NotIsoInner";
        case ErrorCode::NotIsoInnerOnCircle: return "NotIsoInnerOnCircle";
        case ErrorCode::RemainderNonzero: return "RemainderNonzero";
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotInner: return "NotInner";
        case ErrorCode::NotContractiveOnCircle: return "NotContractiveOnCircle";
        case ErrorCode::NotContraction: return "NotContraction";
        case ErrorCode::SliceUnstable: return "SliceUnstable";
        case ErrorCode::ClearingFailed: return "ClearingFailed";
        case ErrorCode::InconsistentData: return "InconsistentData";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

/// Library-wide exception; carries a machine-readable code next to the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace bidisk
