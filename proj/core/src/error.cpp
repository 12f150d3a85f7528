// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/error.hpp"

namespace aimp {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::UnknownRelation: return "UnknownRelation";
    case ErrorKind::RelationDomainViolation: return "RelationDomainViolation";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::PrefixConflict: return "PrefixConflict";
    case ErrorKind::AttributeConflict: return "AttributeConflict";
    case ErrorKind::KindConflict: return "KindConflict";
    case ErrorKind::BadIri: return "BadIri";
    case ErrorKind::BadLiteral: return "BadLiteral";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::CorruptObject: return "CorruptObject";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::Unauthorized: return "Unauthorized";
    case ErrorKind::DigestMismatch: return "DigestMismatch";
    case ErrorKind::HttpStatus: return "HttpStatus";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownPrefix: return "UnknownPrefix";
    case ErrorKind::MissingMandatory: return "MissingMandatory";
    case ErrorKind::BadValue: return "BadValue";
    case ErrorKind::DuplicateStage: return "DuplicateStage";
    case ErrorKind::DuplicateOut: return "DuplicateOut";
    case ErrorKind::BadPath: return "BadPath";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::MissingDep: return "MissingDep";
    case ErrorKind::MissingParam: return "MissingParam";
    case ErrorKind::ExecutionFailed: return "ExecutionFailed";
    case ErrorKind::MissingOut: return "MissingOut";
    case ErrorKind::IncompleteLock: return "IncompleteLock";
    case ErrorKind::ManualIncomplete: return "ManualIncomplete";
    case ErrorKind::SelfInconsistent: return "SelfInconsistent";
    case ErrorKind::LoadError: return "LoadError";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace aimp
