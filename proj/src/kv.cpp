#include <cmath>
#include <string>

#include "pltrack/error.hpp"
#include "pltrack/phy.hpp"

namespace pltrack::phy {

namespace {

constexpr double kCoeffStep = 0.5;
constexpr double kTolerance = 0.25;  // half the finest grid step

int bits_for(int levels) {
    int b = 1;
    while ((1 << b) < levels) ++b;
    return b;
}

SampleFormat make_format(double lo, double hi, double step) {
    SampleFormat f;
    f.min = lo;
    f.step = step;
    f.levels = static_cast<int>(std::lround((hi - lo) / step)) + 1;
    f.bits = bits_for(f.levels);
    return f;
}

int to_gray(int v) { return v ^ (v >> 1); }

int from_gray(int g) {
    int v = 0;
    for (; g; g >>= 1) v ^= g;
    return v;
}

int slot_of(std::size_t pos, std::size_t M, bool interleaved) {
    return interleaved ? static_cast<int>(pos / M) : static_cast<int>(pos % 6);
}

}  // namespace

KvCode::KvCode(int n, bool gray_map) : bits_per_input(n), gray(gray_map) {
    if (n < 1 || n > 12) throw Error(ErrorCode::ConfigError, "bits per sample must be in 1..12");
    const double L = (1 << n) - 1;
    formats_[0] = make_format(0.0, 2.0 * L, kCoeffStep);
    for (int s = 1; s < 4; ++s) formats_[s] = make_format(-L, L, kCoeffStep);
    formats_[4] = make_format(0.0, 2.0 * L, kCoeffStep);
    formats_[5] = make_format(-3.0 * L, 5.0 * L, 1.0);
}

int KvCode::block_bits() const {
    int total = 0;
    for (const auto& f : formats_) total += f.bits;
    return total;
}

std::array<double, 4> kv_transform(const std::array<double, 4>& x) {
    return {0.5 * (x[0] + x[1] + x[2] + x[3]), 0.5 * (x[0] - x[1] + x[2] - x[3]),
            0.5 * (x[0] + x[1] - x[2] - x[3]), 0.5 * (x[0] - x[1] - x[2] + x[3])};
}

std::array<double, 2> kv_syndromes(const KvBlock& b) {
    double sum = 0.0, weighted = 0.0;
    for (int i = 0; i < 4; ++i) {
        sum += b.samples[i];
        weighted += (i + 1) * b.samples[i];
    }
    return {sum - b.p1(), weighted - b.p2()};
}

KvBlock kv_encode(const std::array<int, 4>& input, const KvCode& code) {
    std::array<double, 4> x{};
    for (int i = 0; i < 4; ++i) {
        if (input[i] < 0 || input[i] > code.max_input())
            throw Error(ErrorCode::SampleOutOfRange, "input sample " + std::to_string(input[i]) +
                                                         " does not fit in " +
                                                         std::to_string(code.bits_per_input) + " bits");
        x[i] = input[i];
    }
    const auto c = kv_transform(x);
    KvBlock b;
    double sum = 0.0, weighted = 0.0;
    for (int i = 0; i < 4; ++i) {
        b.samples[i] = c[i];
        sum += c[i];
        weighted += (i + 1) * c[i];
    }
    b.samples[4] = sum;
    b.samples[5] = weighted;
    return b;
}

namespace {

std::array<int, 4> reconstruct(const std::array<double, 4>& c, int max_input) {
    const auto x = kv_transform(c);  // the transform is its own inverse
    std::array<int, 4> out{};
    for (int i = 0; i < 4; ++i) {
        long v = std::lround(x[i]);
        if (v < 0) v = 0;
        if (v > max_input) v = max_input;
        out[i] = static_cast<int>(v);
    }
    return out;
}

}  // namespace

KvDecoded kv_decode(const KvBlock& received, const KvCode& code) {
    std::array<double, 4> c{received.samples[0], received.samples[1], received.samples[2], received.samples[3]};
    const auto [s1, s2] = kv_syndromes(received);
    const bool z1 = std::abs(s1) <= kTolerance;
    const bool z2 = std::abs(s2) <= kTolerance;
    KvDecoded out;
    if (z1 && z2) {
        out.status = KvStatus::Clean;
    } else if (!z1 && !z2) {
        const double ratio = s2 / s1;
        const long j = std::lround(ratio);
        if (j >= 1 && j <= 4 && std::abs(s2 - j * s1) <= kTolerance) {
            c[j - 1] -= s1;
            out.status = KvStatus::Corrected;
        } else {
            out.status = KvStatus::Uncorrectable;
        }
    } else {
        // only one overhead sample disagrees: the coefficients are intact
        out.status = KvStatus::Corrected;
    }
    out.values = reconstruct(c, code.max_input());
    return out;
}

KvDecoded kv_decode_pair(const KvBlock& first, const KvBlock& second, const KvCode& code) {
    std::array<int, 6> differing{};
    int nd = 0;
    for (int s = 0; s < 6; ++s)
        if (first.samples[s] != second.samples[s]) differing[nd++] = s;

    bool have_corrected = false;
    KvDecoded corrected;
    for (unsigned mask = 0; mask < (1u << nd); ++mask) {
        KvBlock cand = first;
        for (int k = 0; k < nd; ++k)
            if (mask & (1u << k)) cand.samples[differing[k]] = second.samples[differing[k]];
        auto d = kv_decode(cand, code);
        if (d.status == KvStatus::Clean) return d;
        if (d.status == KvStatus::Corrected && !have_corrected) {
            corrected = d;
            have_corrected = true;
        }
    }
    if (have_corrected) return corrected;
    return kv_decode(second, code);
}

std::vector<double> interleave(const std::vector<KvBlock>& blocks) {
    const std::size_t M = blocks.size();
    std::vector<double> out(6 * M);
    for (std::size_t s = 0; s < 6; ++s)
        for (std::size_t j = 0; j < M; ++j) out[s * M + j] = blocks[j].samples[s];
    return out;
}

std::vector<KvBlock> deinterleave(const std::vector<double>& stream, std::size_t M) {
    if (M == 0 || stream.size() % (6 * M) != 0)
        throw Error(ErrorCode::LengthMismatch, "stream length " + std::to_string(stream.size()) +
                                                   " is not a multiple of 6*" + std::to_string(M));
    std::vector<KvBlock> out(stream.size() / 6);
    const std::size_t groups = stream.size() / (6 * M);
    for (std::size_t g = 0; g < groups; ++g)
        for (std::size_t s = 0; s < 6; ++s)
            for (std::size_t j = 0; j < M; ++j) out[g * M + j].samples[s] = stream[g * 6 * M + s * M + j];
    return out;
}

Bits kv_serialize(const std::vector<KvBlock>& blocks, bool interleaved, const KvCode& code) {
    const std::size_t M = blocks.size();
    std::vector<double> stream;
    if (interleaved) {
        stream = interleave(blocks);
    } else {
        stream.reserve(6 * M);
        for (const auto& b : blocks) stream.insert(stream.end(), b.samples.begin(), b.samples.end());
    }
    Bits bits;
    bits.reserve(M * code.block_bits());
    for (std::size_t p = 0; p < stream.size(); ++p) {
        const auto& f = code.format(slot_of(p, M, interleaved));
        const long idx = std::lround((stream[p] - f.min) / f.step);
        if (idx < 0 || idx >= f.levels)
            throw Error(ErrorCode::SampleOutOfRange, "sample outside its transmit range");
        const int word = code.gray ? to_gray(static_cast<int>(idx)) : static_cast<int>(idx);
        for (int b = f.bits - 1; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((word >> b) & 1));
    }
    return bits;
}

std::vector<KvBlock> kv_deserialize(const Bits& bits, std::size_t M, bool interleaved, const KvCode& code) {
    if (bits.size() < M * static_cast<std::size_t>(code.block_bits()))
        throw Error(ErrorCode::LengthMismatch, "too few bits for the ensemble");
    std::vector<double> stream(6 * M);
    std::size_t pos = 0;
    for (std::size_t p = 0; p < stream.size(); ++p) {
        const auto& f = code.format(slot_of(p, M, interleaved));
        int word = 0;
        for (int b = 0; b < f.bits; ++b) word = (word << 1) | (bits[pos++] & 1);
        const int idx = code.gray ? from_gray(word) : word;
        stream[p] = f.min + idx * f.step;
    }
    if (interleaved) return deinterleave(stream, M);
    std::vector<KvBlock> out(M);
    for (std::size_t j = 0; j < M; ++j)
        for (int s = 0; s < 6; ++s) out[j].samples[s] = stream[j * 6 + s];
    return out;
}

}  // namespace pltrack::phy
