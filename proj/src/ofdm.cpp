#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "pltrack/error.hpp"
#include "pltrack/phy.hpp"

namespace pltrack::phy {

namespace {

struct Plans {
    fftw_plan forward;
    fftw_plan backward;
    Plans() {
        fftw_complex* a = fftw_alloc_complex(64);
        fftw_complex* b = fftw_alloc_complex(64);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        forward = fftw_plan_dft_1d(64, a, b, FFTW_FORWARD, flags);
        backward = fftw_plan_dft_1d(64, a, b, FFTW_BACKWARD, flags);
        fftw_free(a);
        fftw_free(b);
    }
};

const Plans& plans() {
    static const Plans p;
    return p;
}

void run(fftw_plan plan, const cd* in, cd* out) {
    // new-array execution is thread safe; the input is not modified for out-of-place plans
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cd*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / 8.0;  // 1/sqrt(64)
    for (int i = 0; i < 64; ++i) out[i] *= scale;
}

void check_cfg(const OfdmConfig& cfg) {
    if (cfg.fft_size != 64 || cfg.used != 52 || cfg.cp_len <= 0 || cfg.cp_len >= cfg.fft_size)
        throw Error(ErrorCode::ConfigError, "only the 64-point, 52-subcarrier layout is supported");
}

}  // namespace

void fft64(const cd* in, cd* out) { run(plans().forward, in, out); }
void ifft64(const cd* in, cd* out) { run(plans().backward, in, out); }

const std::vector<int>& used_bins() {
    static const std::vector<int> bins = [] {
        std::vector<int> v;
        for (int k = -26; k <= 26; ++k)
            if (k != 0) v.push_back((k + 64) % 64);
        return v;
    }();
    return bins;
}

std::vector<cd> ofdm_modulate(const std::vector<cd>& symbols, const OfdmConfig& cfg) {
    check_cfg(cfg);
    if (symbols.size() % cfg.used != 0)
        throw Error(ErrorCode::LengthMismatch, "symbol count is not a multiple of 52");
    const std::size_t nsym = symbols.size() / cfg.used;
    const int N = cfg.fft_size, cp = cfg.cp_len, len = cfg.symbol_len();
    std::vector<cd> out(nsym * len);
    std::vector<cd> freq(N), body(N);
    const auto& bins = used_bins();
    for (std::size_t s = 0; s < nsym; ++s) {
        std::fill(freq.begin(), freq.end(), cd{});
        for (int i = 0; i < cfg.used; ++i) freq[bins[i]] = symbols[s * cfg.used + i];
        ifft64(freq.data(), body.data());
        cd* dst = out.data() + s * len;
        for (int i = 0; i < cp; ++i) dst[i] = body[N - cp + i];
        for (int i = 0; i < N; ++i) dst[cp + i] = body[i];
    }
    return out;
}

Demodulated ofdm_demodulate_erasures(const std::vector<cd>& time, const std::vector<cd>& freq_response,
                                     const OfdmConfig& cfg) {
    check_cfg(cfg);
    const int N = cfg.fft_size, cp = cfg.cp_len, len = cfg.symbol_len();
    if (time.size() % len != 0) throw Error(ErrorCode::LengthMismatch, "sample count is not a multiple of 80");
    const std::size_t nsym = time.size() / len;
    if (freq_response.size() != nsym * cfg.used)
        throw Error(ErrorCode::LengthMismatch, "channel response does not match symbol count");
    Demodulated out;
    out.symbols.resize(nsym * cfg.used);
    out.erased.assign(nsym * cfg.used, 0);
    std::vector<cd> freq(N);
    const auto& bins = used_bins();
    for (std::size_t s = 0; s < nsym; ++s) {
        fft64(time.data() + s * len + cp, freq.data());
        for (int i = 0; i < cfg.used; ++i) {
            const std::size_t k = s * cfg.used + i;
            const cd h = freq_response[k];
            if (std::abs(h) < 1e-12) {
                out.erased[k] = 1;
                out.symbols[k] = cd{};
            } else {
                out.symbols[k] = freq[bins[i]] / h;
            }
        }
    }
    return out;
}

std::vector<cd> ofdm_demodulate(const std::vector<cd>& time, const std::vector<cd>& freq_response,
                                const OfdmConfig& cfg) {
    auto d = ofdm_demodulate_erasures(time, freq_response, cfg);
    for (auto e : d.erased)
        if (e) throw Error(ErrorCode::ZeroChannel, "subcarrier response vanishes");
    return std::move(d.symbols);
}

std::vector<cd> bpsk_map(const Bits& bits) {
    std::vector<cd> out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? cd{-1.0, 0.0} : cd{1.0, 0.0};
    return out;
}

std::uint8_t bpsk_demap_one(cd s) { return s.real() < 0.0 ? 1 : 0; }

Bits bpsk_demap(const std::vector<cd>& symbols) {
    Bits out(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) out[i] = bpsk_demap_one(symbols[i]);
    return out;
}

}  // namespace pltrack::phy
