#include "pltrack/error.hpp"

namespace pltrack {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParallelBearings: return "ParallelBearings";
        case ErrorCode::VerticalBearing: return "VerticalBearing";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::DisjointCircles: return "DisjointCircles";
        case ErrorCode::ContainedCircles: return "ContainedCircles";
        case ErrorCode::ConcentricCircles: return "ConcentricCircles";
        case ErrorCode::ZoneBeyondRange: return "ZoneBeyondRange";
        case ErrorCode::HeadingSingular: return "HeadingSingular";
        case ErrorCode::SingularInnovation: return "SingularInnovation";
        case ErrorCode::SingularConstraint: return "SingularConstraint";
        case ErrorCode::SampleOutOfRange: return "SampleOutOfRange";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::ZeroChannel: return "ZeroChannel";
        case ErrorCode::NoValidPackets: return "NoValidPackets";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace pltrack
