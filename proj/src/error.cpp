#include "blpack/error.hpp"

namespace blpack {

const char* to_string(ErrorCode code)
{
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotADisc: return "NotADisc";
        case ErrorCode::NonOrientable: return "NonOrientable";
        case ErrorCode::BadFace: return "BadFace";
        case ErrorCode::BranchOnBoundary: return "BranchOnBoundary";
        case ErrorCode::DuplicateBranchVertex: return "DuplicateBranchVertex";
        case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
        case ErrorCode::CenterRadiusInfinite: return "CenterRadiusInfinite";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::PointOutsideDisc: return "PointOutsideDisc";
        case ErrorCode::ImageIsLine: return "ImageIsLine";
        case ErrorCode::InvalidBranchStructure: return "InvalidBranchStructure";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::LayoutInconsistent: return "LayoutInconsistent";
        case ErrorCode::OutsideCarrier: return "OutsideCarrier";
        case ErrorCode::RegionLocationFailed: return "RegionLocationFailed";
        case ErrorCode::DegenerateFace: return "DegenerateFace";
        case ErrorCode::DifferentComplex: return "DifferentComplex";
        case ErrorCode::RootFindingFailed: return "RootFindingFailed";
        case ErrorCode::BranchDriftedOutside: return "BranchDriftedOutside";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

}  // namespace blpack
