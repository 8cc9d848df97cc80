#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pltrack/phy.hpp"
#include "pltrack/sim.hpp"

namespace pltrack::cli {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kOutDirEnv = "PLTRACK_OUT_DIR";

enum ExitCode { Ok = 0, ConfigFailure = 1, RuntimeFailure = 2, Flagged = 3 };

// Flat key=value file; '#' starts a comment line.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Eb/N0 grid "start:step:stop" (inclusive).
std::vector<double> parse_grid(const std::string& spec);
// Comma list, or a start:step:stop grid.
std::vector<double> parse_list(const std::string& spec);

// Scientific notation, 6 significant digits.
std::string fmt(double v);

// One CSV per subcommand; rows are already ordered.
std::string ber_csv(const std::vector<phy::BerRecord>& recs);
std::string efficiency_csv(const std::vector<sim::EfficiencyRecord>& recs);
std::string tracking_csv(const sim::TrackingResult& res);

std::string ber_plotdata(const std::vector<phy::BerRecord>& recs);
std::string efficiency_plotdata(const std::vector<sim::ComparisonRow>& rows, bool over_beamwidth);
std::string tracking_plotdata(const sim::TrackingResult& res);

// Full command line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pltrack::cli
