#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "pltrack/rng.hpp"

namespace pltrack::phy {

using cd = std::complex<double>;
using Bits = std::vector<std::uint8_t>;

// ---- KV block code ----

// Range and grid of one transmitted sample slot.
struct SampleFormat {
    double min = 0.0;
    double step = 1.0;
    int levels = 1;
    int bits = 1;
};

struct KvCode {
    int bits_per_input = 4;  // n
    bool gray = true;

    explicit KvCode(int n = 4, bool gray_map = true);
    const SampleFormat& format(int slot) const { return formats_[slot]; }
    int block_bits() const;
    int info_bits() const { return 4 * bits_per_input; }
    int max_input() const { return (1 << bits_per_input) - 1; }

private:
    std::array<SampleFormat, 6> formats_{};
};

// Samples 0..3 are coefficients, 4..5 the overhead pair.
struct KvBlock {
    std::array<double, 6> samples{};
    const double* coefficients() const { return samples.data(); }
    double p1() const { return samples[4]; }
    double p2() const { return samples[5]; }
};

enum class KvStatus { Clean, Corrected, Uncorrectable };

struct KvDecoded {
    std::array<int, 4> values{};
    KvStatus status = KvStatus::Clean;
};

// Orthonormal order-4 Hadamard transform.
std::array<double, 4> kv_transform(const std::array<double, 4>& x);

KvBlock kv_encode(const std::array<int, 4>& input, const KvCode& code);
KvDecoded kv_decode(const KvBlock& received, const KvCode& code);
// Decode a retransmitted block using both received copies.
KvDecoded kv_decode_pair(const KvBlock& first, const KvBlock& second, const KvCode& code);
std::array<double, 2> kv_syndromes(const KvBlock& b);

std::vector<double> interleave(const std::vector<KvBlock>& blocks);
std::vector<KvBlock> deinterleave(const std::vector<double>& stream, std::size_t M);

// Bit layout of an ensemble: block-major, or sample-major through the interleaver.
Bits kv_serialize(const std::vector<KvBlock>& blocks, bool interleaved, const KvCode& code);
std::vector<KvBlock> kv_deserialize(const Bits& bits, std::size_t M, bool interleaved, const KvCode& code);

// ---- modulation ----

std::vector<cd> bpsk_map(const Bits& bits);
Bits bpsk_demap(const std::vector<cd>& symbols);
std::uint8_t bpsk_demap_one(cd s);

struct OfdmConfig {
    int fft_size = 64;
    int cp_len = 16;
    int used = 52;
    double sample_rate = 20e6;
    int symbol_len() const { return fft_size + cp_len; }
    double subcarrier_spacing() const { return sample_rate / fft_size; }
};

// FFT bins of the used subcarriers in transmit order: -26..-1, +1..+26.
const std::vector<int>& used_bins();

std::vector<cd> ofdm_modulate(const std::vector<cd>& symbols, const OfdmConfig& cfg = {});

struct Demodulated {
    std::vector<cd> symbols;
    std::vector<std::uint8_t> erased;
};

// freq_response holds `used` entries per OFDM symbol.
std::vector<cd> ofdm_demodulate(const std::vector<cd>& time, const std::vector<cd>& freq_response,
                                const OfdmConfig& cfg = {});
Demodulated ofdm_demodulate_erasures(const std::vector<cd>& time, const std::vector<cd>& freq_response,
                                     const OfdmConfig& cfg = {});

// Unitary 64-point transforms backed by shared plans.
void fft64(const cd* in, cd* out);
void ifft64(const cd* in, cd* out);

// ---- channel ----

enum class ChannelKind { Awgn, Rayleigh, Rician };

struct ChannelModel {
    ChannelKind kind = ChannelKind::Rayleigh;
    int taps = 10;
    double k_factor = 1.0;
};

std::vector<cd> draw_taps(const ChannelModel& m, Rng& rng);
std::vector<cd> taps_to_response(const std::vector<cd>& taps, const OfdmConfig& cfg = {});

struct ChannelOutput {
    std::vector<cd> received;
    std::vector<cd> freq_response;  // per OFDM symbol, used subcarriers
};

// Noise variance per complex time sample for a unitary OFDM chain.
double noise_variance(double ebn0_db, const OfdmConfig& cfg = {});

ChannelOutput channel_apply(const std::vector<cd>& time, const ChannelModel& m, double ebn0_db, Rng& rng,
                            const OfdmConfig& cfg = {});

// Full bits -> bits link. Bits are padded to whole OFDM symbols internally.
Bits transmit_bits(const Bits& bits, const ChannelModel& m, double ebn0_db, Rng& rng);

// ---- BER measurement ----

enum class Scheme { Plain, Kv, KvInterleaved };

struct BerConfig {
    int min_errors = 100;
    std::uint64_t max_bits = 10'000'000;
    std::size_t ensemble_blocks = 52;
    KvCode code{};
};

struct BerRecord {
    Scheme scheme = Scheme::Plain;
    ChannelKind channel = ChannelKind::Awgn;
    double ebn0_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    bool flagged = false;  // max_bits reached before min_errors
    std::uint64_t blocks_sent = 0;
    std::uint64_t blocks_retransmitted = 0;
};

BerRecord run_ber_point(Scheme scheme, const ChannelModel& channel, double ebn0_db, const BerConfig& cfg,
                        std::uint64_t seed);

const char* to_string(Scheme s);
const char* to_string(ChannelKind k);
Scheme scheme_from_string(const std::string& s);
ChannelKind channel_from_string(const std::string& s);

}  // namespace pltrack::phy
