#pragma once

#include <stdexcept>
#include <string>

namespace cpabe {

// Base of everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller handed us something nonsensical (maps to CLI exit code 2).
struct UsageError : Error {
    using Error::Error;
};

// Cryptographic or policy failure (maps to CLI exit code 3).
struct CryptoError : Error {
    using Error::Error;
};

// Persistent-state failure (maps to CLI exit code 4).
struct StorageError : Error {
    using Error::Error;
};

struct UnsupportedSecurityLevel : UsageError {
    using UsageError::UsageError;
};
struct EmptyAttributeSet : UsageError {
    using UsageError::UsageError;
};
struct DuplicateUser : UsageError {
    using UsageError::UsageError;
};
struct UnknownAttribute : UsageError {
    using UsageError::UsageError;
};
struct DuplicateField : UsageError {
    using UsageError::UsageError;
};
struct UnknownField : UsageError {
    using UsageError::UsageError;
};
struct NotDeterministicField : UsageError {
    using UsageError::UsageError;
};
struct SetupMissing : UsageError {
    using UsageError::UsageError;
};

struct RandomnessUnavailable : CryptoError {
    using CryptoError::CryptoError;
};
struct InvalidAttributeToken : CryptoError {
    using CryptoError::CryptoError;
};
struct InvalidGroupElement : CryptoError {
    using CryptoError::CryptoError;
};
struct SyntaxError : CryptoError {
    SyntaxError(size_t position, const std::string& message)
        : CryptoError("policy syntax error at position " + std::to_string(position) + ": " + message),
          position(position) {}
    size_t position;
};
struct ThresholdOutOfRange : CryptoError {
    using CryptoError::CryptoError;
};
struct PointNotInSet : CryptoError {
    using CryptoError::CryptoError;
};
struct DegenerateSet : CryptoError {
    using CryptoError::CryptoError;
};
struct NotSatisfied : CryptoError {
    using CryptoError::CryptoError;
};
struct PolicyNotSatisfied : CryptoError {
    using CryptoError::CryptoError;
};
struct MalformedCiphertext : CryptoError {
    using CryptoError::CryptoError;
};
struct AttributeMissing : CryptoError {
    using CryptoError::CryptoError;
};
struct IntegrityFailure : CryptoError {
    using CryptoError::CryptoError;
};
struct BadPadding : CryptoError {
    using CryptoError::CryptoError;
};
struct DekMismatch : CryptoError {
    using CryptoError::CryptoError;
};

struct CorruptContainer : StorageError {
    using StorageError::StorageError;
};
struct VersionUnsupported : StorageError {
    using StorageError::StorageError;
};
struct CorruptStore : StorageError {
    using StorageError::StorageError;
};

}  // namespace cpabe
