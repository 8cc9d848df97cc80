#include <cmath>
#include <numbers>

#include "pltrack/error.hpp"
#include "pltrack/phy.hpp"

namespace pltrack::phy {

std::vector<cd> draw_taps(const ChannelModel& m, Rng& rng) {
    if (m.kind == ChannelKind::Awgn) return {cd{1.0, 0.0}};
    if (m.taps < 1) throw Error(ErrorCode::ConfigError, "tap count must be positive");
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double k = m.kind == ChannelKind::Rician ? m.k_factor : 0.0;
    const double scatter = 1.0 / (k + 1.0);
    const double sd = std::sqrt(scatter / m.taps / 2.0);
    std::vector<cd> h(m.taps);
    for (auto& t : h) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        t = cd{re * sd, im * sd};
    }
    if (m.kind == ChannelKind::Rician) {
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        h[0] += std::polar(std::sqrt(k / (k + 1.0)), phase(rng));
    }
    return h;
}

std::vector<cd> taps_to_response(const std::vector<cd>& taps, const OfdmConfig& cfg) {
    if (taps.size() > static_cast<std::size_t>(cfg.fft_size))
        throw Error(ErrorCode::LengthMismatch, "channel longer than the transform");
    std::vector<cd> padded(cfg.fft_size), freq(cfg.fft_size);
    std::copy(taps.begin(), taps.end(), padded.begin());
    fft64(padded.data(), freq.data());
    const double unscale = std::sqrt(static_cast<double>(cfg.fft_size));
    std::vector<cd> out;
    out.reserve(cfg.used);
    for (int b : used_bins()) out.push_back(freq[b] * unscale);
    return out;
}

double noise_variance(double ebn0_db, const OfdmConfig& cfg) {
    if (std::isinf(ebn0_db) && ebn0_db > 0) return 0.0;
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    // average body power per time sample with unit-energy subcarriers
    const double body_power = static_cast<double>(cfg.used) / cfg.fft_size;
    // each body sample carries used/fft_size bits' worth of energy; the cyclic
    // prefix is discarded before detection so it does not count towards Eb
    const double eb_per_sample = body_power * cfg.fft_size / cfg.used;
    return eb_per_sample / ebn0;
}

ChannelOutput channel_apply(const std::vector<cd>& time, const ChannelModel& m, double ebn0_db, Rng& rng,
                            const OfdmConfig& cfg) {
    const int len = cfg.symbol_len();
    if (time.size() % len != 0) throw Error(ErrorCode::LengthMismatch, "sample count is not a multiple of 80");
    if (m.kind != ChannelKind::Awgn && m.taps > cfg.cp_len + 1)
        throw Error(ErrorCode::ConfigError, "channel memory exceeds the cyclic prefix");
    const std::size_t nsym = time.size() / len;
    const double sigma = std::sqrt(noise_variance(ebn0_db, cfg) / 2.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    ChannelOutput out;
    out.received.assign(time.size(), cd{});
    out.freq_response.reserve(nsym * cfg.used);
    for (std::size_t s = 0; s < nsym; ++s) {
        const auto h = draw_taps(m, rng);
        const auto resp = taps_to_response(h, cfg);
        out.freq_response.insert(out.freq_response.end(), resp.begin(), resp.end());
        const cd* x = time.data() + s * len;
        // tails spill into the next symbol's prefix
        for (int n = 0; n < len; ++n) {
            for (std::size_t l = 0; l < h.size(); ++l) {
                const std::size_t idx = s * len + n + l;
                if (idx < out.received.size()) out.received[idx] += h[l] * x[n];
            }
        }
    }
    if (sigma > 0.0) {
        for (auto& y : out.received) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            y += cd{re * sigma, im * sigma};
        }
    }
    return out;
}

Bits transmit_bits(const Bits& bits, const ChannelModel& m, double ebn0_db, Rng& rng) {
    const OfdmConfig cfg;
    const std::size_t nsym = (bits.size() + cfg.used - 1) / cfg.used;
    Bits padded(nsym * cfg.used, 0);
    std::copy(bits.begin(), bits.end(), padded.begin());
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = bits.size(); i < padded.size(); ++i) padded[i] = coin(rng);

    const auto tx = ofdm_modulate(bpsk_map(padded), cfg);
    const auto ch = channel_apply(tx, m, ebn0_db, rng, cfg);
    const auto rx = ofdm_demodulate_erasures(ch.received, ch.freq_response, cfg);
    Bits out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        out[i] = rx.erased[i] ? static_cast<std::uint8_t>(coin(rng)) : bpsk_demap_one(rx.symbols[i]);
    return out;
}

}  // namespace pltrack::phy
