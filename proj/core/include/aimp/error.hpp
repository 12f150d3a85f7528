// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace aimp {

/// Error categories raised by the core library. The CLI maps each kind to a
/// stable process exit code; tests assert on kinds rather than message text.
enum class ErrorKind {
    // provgraph
    DuplicateId,
    UnknownNode,
    UnknownClass,
    UnknownRelation,
    RelationDomainViolation,
    DuplicateEdge,
    InvalidGraph,
    PrefixConflict,
    AttributeConflict,
    KindConflict,
    BadIri,
    BadLiteral,
    // cas
    IoError,
    NotFound,
    CorruptObject,
    NetworkError,
    Unauthorized,
    DigestMismatch,
    HttpStatus,
    // parsing
    SyntaxError,
    UnknownPrefix,
    MissingMandatory,
    BadValue,
    // pipeline
    DuplicateStage,
    DuplicateOut,
    BadPath,
    CycleDetected,
    MissingDep,
    MissingParam,
    ExecutionFailed,
    MissingOut,
    IncompleteLock,
    // passport
    ManualIncomplete,
    SelfInconsistent,
    LoadError,
    Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    Error(ErrorKind kind, std::string message, std::vector<std::string> details)
        : std::runtime_error(std::move(message)), kind_(kind), details_(std::move(details)) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Structured payload, e.g. the cycle path for CycleDetected or the list
    /// of blank fields for ManualIncomplete.
    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    ErrorKind kind_;
    std::vector<std::string> details_;
};

} // namespace aimp
