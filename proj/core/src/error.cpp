#include "pqw/error.h"

namespace pqw {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParameterError: return "ParameterError";
        case ErrorCode::NoInverse: return "NoInverse";
        case ErrorCode::ReconstructFailed: return "ReconstructFailed";
        case ErrorCode::BadRequest: return "BadRequest";
        case ErrorCode::UserExists: return "UserExists";
        case ErrorCode::UnknownUser: return "UnknownUser";
        case ErrorCode::AuthFailed: return "AuthFailed";
        case ErrorCode::RateLimited: return "RateLimited";
        case ErrorCode::VersionConflict: return "VersionConflict";
        case ErrorCode::StoreCorrupt: return "StoreCorrupt";
        case ErrorCode::TransportError: return "TransportError";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "UnknownError";
}

ErrorCode error_from_name(std::string_view name) {
    if (name == "BadRequest") return ErrorCode::BadRequest;
    if (name == "UserExists") return ErrorCode::UserExists;
    if (name == "UnknownUser") return ErrorCode::UnknownUser;
    if (name == "AuthFailed") return ErrorCode::AuthFailed;
    if (name == "RateLimited") return ErrorCode::RateLimited;
    if (name == "VersionConflict") return ErrorCode::VersionConflict;
    if (name == "StoreCorrupt") return ErrorCode::StoreCorrupt;
    return ErrorCode::TransportError;
}

}  // namespace pqw
