#include "pltrack/runner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "pltrack/error.hpp"
#include "pltrack/geometry.hpp"

namespace pltrack::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (trim(v.substr(used)).empty() && std::isfinite(d)) return d;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ConfigError, "'" + key + "' expects a number, got '" + v + "'");
}

long long to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d) || std::abs(d) > 9e15)
        throw Error(ErrorCode::ConfigError, "'" + key + "' expects an integer, got '" + v + "'");
    return static_cast<long long>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw Error(ErrorCode::ConfigError, "'" + key + "' expects true/false, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot write '" + p.string() + "'");
    f << content;
    f.close();
    if (!f) throw Error(ErrorCode::IoError, "write to '" + p.string() + "' failed");
}

struct OptionDef {
    std::string name;
    std::string def;
    std::string help;
    bool flag = false;
};

const std::vector<OptionDef>& common_specs() {
    static const std::vector<OptionDef> v = {
        {"seed", "1", "master seed"},
        {"out", "", "CSV output path (default: $PLTRACK_OUT_DIR or ., named after the subcommand)"},
        {"threads", "1", "worker threads"},
    };
    return v;
}

const std::map<std::string, std::vector<OptionDef>>& command_specs() {
    static const std::map<std::string, std::vector<OptionDef>> m = {
        {"ber",
         {{"scheme", "all", "plain, kv, kv_interleaved, a comma list, or all"},
          {"channel", "rayleigh,rician", "awgn, rayleigh, rician, a comma list, or all"},
          {"ebn0", "0:2:20", "Eb/N0 grid start:step:stop in dB"},
          {"min-errors", "100", "stop a point after this many bit errors"},
          {"max-bits", "10000000", "stop a point after this many information bits"},
          {"bits-per-sample", "4", "KV input sample width"},
          {"ensemble", "52", "blocks per ensemble (interleaver depth)"},
          {"binary-map", "false", "send KV samples in plain offset binary instead of Gray code", true}}},
        {"efficiency",
         {{"sweep", "beamwidth", "beamwidth or silence"},
          {"beamwidth", "2,7,10,14,20,28,30", "beamwidths in degrees (sweep points, or the ladder for a silence sweep)"},
          {"silent", "15", "silent duration in seconds for a beamwidth sweep"},
          {"silences", "0:3:30", "silent durations for a silence sweep"},
          {"experiments", "10", "experiments per point"},
          {"trials", "10", "trials per experiment"},
          {"fix-interval", "28.6", "seconds between the two prior fixes"},
          {"tx-distance", "7600", "transmitter distance behind the last fix, m"},
          {"tx-offset", "14", "max transmitter bearing offset, degrees"},
          {"p-sharp", "0.25", "sharp-turn probability per step"},
          {"jitter", "19", "per-step heading jitter, degrees"}}},
        {"track",
         {{"constrained", "false", "project estimates onto the road", true},
          {"runs", "200", "Monte Carlo runs"},
          {"steps", "100", "filter steps per run"},
          {"bearing-noise", "0", "AoA noise for the initial fix, degrees"}}},
        {"range",
         {{"true-range", "100", "true distance, m"},
          {"packets", "20", "packets per ensemble"},
          {"jitter-ns", "10", "processing delay std dev, ns"},
          {"window", "1.0", "ensemble window, s"},
          {"ensembles", "1000", "number of ensembles"}}},
    };
    return m;
}

bool is_metadata_key(const std::string& k) {
    return k == "subcommand" || k == "toolkit_version" || k == "wall_time_s";
}

using Values = std::map<std::string, std::string>;

std::filesystem::path output_path(const std::string& sub, const Values& v) {
    if (!v.at("out").empty()) return v.at("out");
    const char* dir = std::getenv(kOutDirEnv);
    std::filesystem::path base = dir && *dir ? dir : ".";
    return base / (sub + ".csv");
}

std::filesystem::path sibling(const std::filesystem::path& csv, const std::string& suffix) {
    auto p = csv;
    if (p.extension() == ".csv") p.replace_extension();
    return p.string() + suffix;
}

std::string sidecar(const std::string& sub, const Values& v, double wall) {
    std::ostringstream s;
    s << "# run metadata; pass this file to --config to reproduce the CSV\n";
    s << "subcommand=" << sub << "\n";
    s << "toolkit_version=" << kVersion << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", wall);
    s << "wall_time_s=" << buf << "\n";
    for (const auto& [k, val] : v) s << k << "=" << val << "\n";
    return s.str();
}

template <class T>
std::vector<T> pick(const std::string& key, const std::string& spec, const std::vector<T>& all,
                    T (*conv)(const std::string&)) {
    if (spec == "all") return all;
    std::vector<T> out;
    for (const auto& s : split(spec, ',')) {
        T t = conv(s);
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    if (out.empty()) throw Error(ErrorCode::ConfigError, "'" + key + "' is empty");
    return out;
}

struct Outcome {
    std::string csv;
    std::string plot;
    bool flagged = false;
    std::string summary;
};

Outcome do_ber(const Values& v, std::uint64_t seed, unsigned threads) {
    const auto schemes = pick<phy::Scheme>("scheme", v.at("scheme"),
                                           {phy::Scheme::Plain, phy::Scheme::Kv, phy::Scheme::KvInterleaved},
                                           phy::scheme_from_string);
    const auto channels = pick<phy::ChannelKind>(
        "channel", v.at("channel"), {phy::ChannelKind::Awgn, phy::ChannelKind::Rayleigh, phy::ChannelKind::Rician},
        phy::channel_from_string);
    const auto grid = parse_grid(v.at("ebn0"));
    phy::BerConfig cfg;
    cfg.min_errors = static_cast<int>(to_int("min-errors", v.at("min-errors")));
    const long long max_bits = to_int("max-bits", v.at("max-bits"));
    const long long ens = to_int("ensemble", v.at("ensemble"));
    if (cfg.min_errors < 1 || max_bits < 1 || ens < 1)
        throw Error(ErrorCode::ConfigError, "min-errors, max-bits and ensemble must be positive");
    cfg.max_bits = static_cast<std::uint64_t>(max_bits);
    cfg.ensemble_blocks = static_cast<std::size_t>(ens);
    cfg.code = phy::KvCode(static_cast<int>(to_int("bits-per-sample", v.at("bits-per-sample"))),
                           !to_bool("binary-map", v.at("binary-map")));

    struct Job {
        phy::Scheme s;
        phy::ChannelKind c;
        double e;
    };
    std::vector<Job> jobs;
    for (auto s : schemes)
        for (auto c : channels)
            for (double e : grid) jobs.push_back({s, c, e});
    std::vector<phy::BerRecord> recs(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t i) {
        const auto& j = jobs[i];
        phy::ChannelModel ch;
        ch.kind = j.c;
        const auto s = derive_seed(seed, {tag_of(phy::to_string(j.s)), tag_of(phy::to_string(j.c)),
                                          static_cast<std::uint64_t>(std::llround(j.e * 1000.0))});
        recs[i] = phy::run_ber_point(j.s, ch, j.e, cfg, s);
    });
    Outcome o;
    o.csv = ber_csv(recs);
    o.plot = ber_plotdata(recs);
    int nflag = 0;
    for (const auto& r : recs) nflag += r.flagged;
    o.flagged = nflag > 0;
    o.summary = std::to_string(recs.size()) + " BER points, " + std::to_string(nflag) + " flagged";
    return o;
}

Outcome do_efficiency(const Values& v, std::uint64_t seed, unsigned threads) {
    sim::EfficiencyConfig cfg;
    sim::MobilityConfig mob;
    cfg.experiments = static_cast<int>(to_int("experiments", v.at("experiments")));
    cfg.trials_per_experiment = static_cast<int>(to_int("trials", v.at("trials")));
    cfg.fix_interval = to_double("fix-interval", v.at("fix-interval"));
    cfg.tx_distance = to_double("tx-distance", v.at("tx-distance"));
    cfg.tx_offset = geometry::deg2rad(to_double("tx-offset", v.at("tx-offset")));
    cfg.silent_duration = to_double("silent", v.at("silent"));
    mob.turn.p_sharp = to_double("p-sharp", v.at("p-sharp"));
    mob.turn.jitter = geometry::deg2rad(to_double("jitter", v.at("jitter")));
    if (mob.turn.p_sharp < 0.0 || mob.turn.p_sharp > 1.0)
        throw Error(ErrorCode::ConfigError, "p-sharp must lie in [0, 1]");

    std::vector<double> beams;
    for (double d : parse_list(v.at("beamwidth"))) beams.push_back(geometry::deg2rad(d));
    const std::string sweep = v.at("sweep");
    std::vector<sim::ComparisonRow> rows;
    if (sweep == "beamwidth") {
        rows = sim::compare_over_beamwidth(cfg, mob, beams, seed, threads);
    } else if (sweep == "silence") {
        cfg.ladder = beams;
        rows = sim::compare_over_silence(cfg, mob, parse_list(v.at("silences")), seed, threads);
    } else {
        throw Error(ErrorCode::ConfigError, "sweep must be 'beamwidth' or 'silence'");
    }
    std::vector<sim::EfficiencyRecord> recs;
    for (const auto& r : rows) {
        recs.push_back(r.integrated);
        recs.push_back(r.baseline);
    }
    Outcome o;
    o.csv = efficiency_csv(recs);
    o.plot = efficiency_plotdata(rows, sweep == "beamwidth");
    o.summary = std::to_string(rows.size()) + " sweep points";
    return o;
}

Outcome do_track(const Values& v, std::uint64_t seed, unsigned threads) {
    sim::MobilityConfig mob;
    kalman::FilterConfig f;
    sim::TrackingConfig t;
    f.constrained = to_bool("constrained", v.at("constrained"));
    t.runs = static_cast<int>(to_int("runs", v.at("runs")));
    t.steps = static_cast<int>(to_int("steps", v.at("steps")));
    t.bearing_noise = geometry::deg2rad(to_double("bearing-noise", v.at("bearing-noise")));
    if (t.runs < 1 || t.steps < 1) throw Error(ErrorCode::ConfigError, "runs and steps must be >= 1");
    const auto res = sim::run_tracking(mob, f, t, seed, threads);
    Outcome o;
    o.csv = tracking_csv(res);
    o.plot = tracking_plotdata(res);
    o.summary = "mean |error| north " + fmt(res.mean_error_north) + " m, east " + fmt(res.mean_error_east) + " m";
    return o;
}

Outcome do_range(const Values& v, std::uint64_t seed, unsigned threads) {
    sim::RangingConfig rc;
    rc.true_range = to_double("true-range", v.at("true-range"));
    rc.packets = static_cast<int>(to_int("packets", v.at("packets")));
    rc.jitter = to_double("jitter-ns", v.at("jitter-ns")) * 1e-9;
    rc.window = to_double("window", v.at("window"));
    const long long n = to_int("ensembles", v.at("ensembles"));
    if (n < 1 || rc.packets < 1 || rc.jitter < 0.0)
        throw Error(ErrorCode::ConfigError, "ensembles and packets must be >= 1, jitter >= 0");
    struct Row {
        double est;
        std::size_t on_time;
        int late;
    };
    std::vector<Row> rows(static_cast<std::size_t>(n));
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        Rng rng(derive_seed(seed, {tag_of("range"), i}));
        const auto ens = sim::simulate_ensemble(rc, rng);
        const double est = sim::range_from_timestamps(ens, rc.c);
        rows[i] = {est, ens.pairs.size(), ens.late_count};
    });
    std::ostringstream s;
    s << "ensemble,true_range_m,estimate_m,on_time,late\n";
    double sum = 0.0;
    int valid = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s << i << "," << fmt(rc.true_range) << "," << fmt(rows[i].est) << "," << rows[i].on_time << ","
          << rows[i].late << "\n";
        if (!std::isnan(rows[i].est)) {
            sum += rows[i].est;
            ++valid;
        }
    }
    Outcome o;
    o.csv = s.str();
    o.summary = "mean range estimate " + fmt(valid ? sum / valid : std::nan("")) + " m over " +
                std::to_string(valid) + " ensembles";
    return o;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int n = 0;
    while (std::getline(f, line)) {
        ++n;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ConfigError, path + ":" + std::to_string(n) + ": expected key=value");
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw Error(ErrorCode::ConfigError, path + ":" + std::to_string(n) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::vector<double> parse_grid(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.size() == 1) return {to_double("grid", parts[0])};
    if (parts.size() != 3) throw Error(ErrorCode::ConfigError, "grid must be start:step:stop, got '" + spec + "'");
    const double a = to_double("grid", parts[0]);
    const double step = to_double("grid", parts[1]);
    const double b = to_double("grid", parts[2]);
    if (step <= 0.0) throw Error(ErrorCode::ConfigError, "grid step must be > 0");
    if (b < a) throw Error(ErrorCode::ConfigError, "grid stop must not precede start");
    const long count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 100000) throw Error(ErrorCode::ConfigError, "grid too large");
    std::vector<double> out;
    for (long i = 0; i < count; ++i) out.push_back(a + i * step);
    return out;
}

std::vector<double> parse_list(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        out = parse_grid(spec);
    } else {
        for (const auto& s : split(spec, ',')) out.push_back(to_double("list", s));
    }
    if (out.empty()) throw Error(ErrorCode::ConfigError, "empty list");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

std::string ber_csv(const std::vector<phy::BerRecord>& recs) {
    std::ostringstream s;
    s << "scheme,channel,ebn0_db,bits_sent,bit_errors,ber,flagged\n";
    for (const auto& r : recs)
        s << phy::to_string(r.scheme) << "," << phy::to_string(r.channel) << "," << fmt(r.ebn0_db) << ","
          << r.bits_sent << "," << r.bit_errors << "," << fmt(r.ber) << "," << (r.flagged ? 1 : 0) << "\n";
    return s.str();
}

std::string efficiency_csv(const std::vector<sim::EfficiencyRecord>& recs) {
    std::ostringstream s;
    s << "algorithm,beam_mode,beamwidth_deg,silent_s,successes,trials,efficiency\n";
    for (const auto& r : recs)
        s << sim::to_string(r.algorithm) << "," << (r.fixed_beam ? "fixed" : "ladder") << ","
          << fmt(geometry::rad2deg(r.beamwidth)) << "," << fmt(r.silent_duration) << "," << r.successes << ","
          << r.trials << "," << fmt(r.efficiency) << "\n";
    return s.str();
}

std::string tracking_csv(const sim::TrackingResult& res) {
    std::ostringstream s;
    s << "step,error_north_m,error_east_m\n";
    for (std::size_t k = 0; k < res.step_error_north.size(); ++k)
        s << k + 1 << "," << fmt(res.step_error_north[k]) << "," << fmt(res.step_error_east[k]) << "\n";
    s << "summary," << fmt(res.mean_error_north) << "," << fmt(res.mean_error_east) << "\n";
    return s.str();
}

std::string ber_plotdata(const std::vector<phy::BerRecord>& recs) {
    if (recs.empty()) throw Error(ErrorCode::IoError, "no BER records to plot");
    std::vector<std::pair<phy::Scheme, phy::ChannelKind>> groups;
    for (const auto& r : recs) {
        const std::pair<phy::Scheme, phy::ChannelKind> g{r.scheme, r.channel};
        if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
    }
    std::ostringstream s;
    s << "# BER vs Eb/N0; one block per scheme/channel, blocks separated by two blank lines\n";
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (gi) s << "\n\n";
        s << "# scheme=" << phy::to_string(groups[gi].first) << " channel=" << phy::to_string(groups[gi].second)
          << "\n# ebn0_db ber flagged\n";
        for (const auto& r : recs) {
            if (r.scheme != groups[gi].first || r.channel != groups[gi].second) continue;
            if (r.bit_errors == 0)
                s << "# zero errors at ebn0_db=" << fmt(r.ebn0_db) << " (" << r.bits_sent << " bits)\n";
            else
                s << fmt(r.ebn0_db) << " " << fmt(r.ber) << " " << (r.flagged ? 1 : 0) << "\n";
        }
    }
    return s.str();
}

std::string efficiency_plotdata(const std::vector<sim::ComparisonRow>& rows, bool over_beamwidth) {
    if (rows.empty()) throw Error(ErrorCode::IoError, "no efficiency records to plot");
    std::ostringstream s;
    s << (over_beamwidth ? "# efficiency vs beamwidth\n# beamwidth_deg" : "# efficiency vs silent duration\n# silent_s")
      << " integrated_zone forward_only_baseline\n";
    for (const auto& r : rows) {
        const double x =
            over_beamwidth ? geometry::rad2deg(r.integrated.beamwidth) : r.integrated.silent_duration;
        s << fmt(x) << " " << fmt(r.integrated.efficiency) << " " << fmt(r.baseline.efficiency) << "\n";
    }
    return s.str();
}

std::string tracking_plotdata(const sim::TrackingResult& res) {
    if (res.step_error_north.empty()) throw Error(ErrorCode::IoError, "no tracking records to plot");
    std::ostringstream s;
    s << "# mean absolute position error vs step\n# step error_north_m error_east_m\n";
    for (std::size_t k = 0; k < res.step_error_north.size(); ++k)
        s << k + 1 << " " << fmt(res.step_error_north[k]) << " " << fmt(res.step_error_east[k]) << "\n";
    return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tracking, zone-efficiency, link BER and ranging simulations"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    struct Sub {
        CLI::App* app;
        Values values;
        std::map<std::string, bool> flags;
        std::string config;
    };
    std::map<std::string, Sub> subs;
    for (const auto& [name, specs] : command_specs()) subs[name];
    for (auto& [name, sub] : subs) {
        static const std::map<std::string, std::string> about = {
            {"ber", "BER vs Eb/N0 for plain, kv and kv_interleaved over fading OFDM"},
            {"efficiency", "tracking-zone efficiency vs beamwidth or silent duration"},
            {"track", "Kalman tracking error on a road, with or without the road constraint"},
            {"range", "range estimates from ToD/ToA packet ensembles"},
        };
        sub.app = app.add_subcommand(name, about.at(name));
        sub.app->add_option("--config", sub.config, "flat key=value config file (flags win)");
        std::vector<OptionDef> all = common_specs();
        const auto& own = command_specs().at(name);
        all.insert(all.end(), own.begin(), own.end());
        for (const auto& sp : all) {
            sub.values[sp.name] = sp.def;
            if (sp.flag) {
                sub.flags[sp.name] = false;
                sub.app->add_flag("--" + sp.name, sub.flags[sp.name], sp.help);
            } else {
                sub.app->add_option("--" + sp.name, sub.values[sp.name], sp.help)->default_str(sp.def);
            }
        }
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return ConfigFailure;
    }

    std::string name;
    for (auto& [n, sub] : subs)
        if (sub.app->parsed()) name = n;
    Sub& sub = subs.at(name);

    Outcome result;
    std::filesystem::path csv_path;
    try {
        for (auto& [k, on] : sub.flags)
            if (sub.app->get_option("--" + k)->count() > 0) sub.values[k] = on ? "true" : "false";
        if (!sub.config.empty()) {
            for (const auto& [k, val] : read_config_file(sub.config)) {
                if (is_metadata_key(k)) {
                    if (k == "subcommand" && val != name)
                        throw Error(ErrorCode::ConfigError, "config is for subcommand '" + val + "'");
                    continue;
                }
                if (!sub.values.count(k)) throw Error(ErrorCode::ConfigError, "unknown config key '" + k + "'");
                if (sub.app->get_option("--" + k)->count() == 0) sub.values[k] = val;
            }
        }
        for (auto& [k, on] : sub.flags) sub.values[k] = to_bool(k, sub.values[k]) ? "true" : "false";

        const auto seed_ll = to_int("seed", sub.values.at("seed"));
        if (seed_ll < 0) throw Error(ErrorCode::ConfigError, "seed must be non-negative");
        const auto threads_ll = to_int("threads", sub.values.at("threads"));
        if (threads_ll < 1 || threads_ll > 1024) throw Error(ErrorCode::ConfigError, "threads must be in 1..1024");
        const auto seed = static_cast<std::uint64_t>(seed_ll);
        const auto threads = static_cast<unsigned>(threads_ll);
        csv_path = output_path(name, sub.values);

        const auto t0 = std::chrono::steady_clock::now();
        if (name == "ber")
            result = do_ber(sub.values, seed, threads);
        else if (name == "efficiency")
            result = do_efficiency(sub.values, seed, threads);
        else if (name == "track")
            result = do_track(sub.values, seed, threads);
        else
            result = do_range(sub.values, seed, threads);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        if (csv_path.has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(csv_path.parent_path(), ec);
        }
        write_file(csv_path, result.csv);
        write_file(sibling(csv_path, ".meta"), sidecar(name, sub.values, wall));
        if (!result.plot.empty()) write_file(sibling(csv_path, ".plot.dat"), result.plot);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::ConfigError ? ConfigFailure : RuntimeFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return RuntimeFailure;
    }
    out << name << ": " << result.summary << "; wrote " << csv_path.string() << "\n";
    if (result.flagged) {
        err << "warning: some BER points stopped at max-bits before reaching min-errors\n";
        return Flagged;
    }
    return Ok;
}

}  // namespace pltrack::cli
