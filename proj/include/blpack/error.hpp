#pragma once

#include <stdexcept>
#include <string>

namespace blpack {

enum class ErrorCode {
    InvalidArgument,
    // complex
    NotADisc,
    NonOrientable,
    BadFace,
    BranchOnBoundary,
    DuplicateBranchVertex,
    // geometry
    NonPositiveRadius,
    CenterRadiusInfinite,
    CoincidentPoints,
    PointOutsideDisc,
    ImageIsLine,
    // solver
    InvalidBranchStructure,
    NoConvergence,
    LayoutInconsistent,
    // maps
    OutsideCarrier,
    RegionLocationFailed,
    DegenerateFace,
    DifferentComplex,
    RootFindingFailed,
    // harness
    BranchDriftedOutside,
    IoError,
    ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace blpack
