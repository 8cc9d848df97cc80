#include "pltrack/error.hpp"
#include "pltrack/sim.hpp"

namespace pltrack::sim {

double range_from_timestamps(const PacketTimestampEnsemble& ens, double c) {
    double sum = 0.0;
    int n = 0;
    for (const auto& [tod, toa] : ens.pairs) {
        if (toa > ens.window_end) continue;
        sum += toa - tod;
        ++n;
    }
    if (n == 0) throw Error(ErrorCode::NoValidPackets, "no packet arrived inside the ensemble window");
    return c * sum / n;
}

PacketTimestampEnsemble simulate_ensemble(const RangingConfig& cfg, Rng& rng) {
    if (cfg.packets < 1) throw Error(ErrorCode::ConfigError, "ensemble needs at least one packet");
    std::normal_distribution<double> delay(0.0, cfg.jitter);
    PacketTimestampEnsemble ens;
    ens.window_end = cfg.window;
    const double flight = cfg.true_range / cfg.c;
    for (int i = 0; i < cfg.packets; ++i) {
        const double tod = i * cfg.spacing;
        double toa = tod + flight + delay(rng);
        if (toa < tod) toa = tod;
        if (toa > ens.window_end)
            ++ens.late_count;
        else
            ens.pairs.emplace_back(tod, toa);
    }
    return ens;
}

}  // namespace pltrack::sim
