#pragma once

#include <stdexcept>
#include <string>

namespace pltrack {

enum class ErrorCode {
    ParallelBearings,
    VerticalBearing,
    CoincidentPoints,
    DisjointCircles,
    ContainedCircles,
    ConcentricCircles,
    ZoneBeyondRange,
    HeadingSingular,
    SingularInnovation,
    SingularConstraint,
    SampleOutOfRange,
    LengthMismatch,
    ZeroChannel,
    NoValidPackets,
    ConfigError,
    IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pltrack
