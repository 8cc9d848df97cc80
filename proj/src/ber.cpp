#include <algorithm>
#include <cmath>

#include "pltrack/error.hpp"
#include "pltrack/phy.hpp"

namespace pltrack::phy {

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::Plain: return "plain";
        case Scheme::Kv: return "kv";
        case Scheme::KvInterleaved: return "kv_interleaved";
    }
    return "?";
}

const char* to_string(ChannelKind k) {
    switch (k) {
        case ChannelKind::Awgn: return "awgn";
        case ChannelKind::Rayleigh: return "rayleigh";
        case ChannelKind::Rician: return "rician";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "plain") return Scheme::Plain;
    if (s == "kv") return Scheme::Kv;
    if (s == "kv_interleaved" || s == "kvi") return Scheme::KvInterleaved;
    throw Error(ErrorCode::ConfigError, "unknown scheme '" + s + "'");
}

ChannelKind channel_from_string(const std::string& s) {
    if (s == "awgn") return ChannelKind::Awgn;
    if (s == "rayleigh") return ChannelKind::Rayleigh;
    if (s == "rician") return ChannelKind::Rician;
    throw Error(ErrorCode::ConfigError, "unknown channel '" + s + "'");
}

namespace {

int count_bit_errors(const std::array<int, 4>& a, const std::array<int, 4>& b) {
    int e = 0;
    for (int i = 0; i < 4; ++i) e += __builtin_popcount(static_cast<unsigned>(a[i] ^ b[i]));
    return e;
}

std::vector<KvBlock> send_ensemble(const std::vector<KvBlock>& blocks, bool interleaved, const KvCode& code,
                                   const ChannelModel& ch, double ebn0_db, Rng& rng) {
    const auto bits = kv_serialize(blocks, interleaved, code);
    const auto rx = transmit_bits(bits, ch, ebn0_db, rng);
    return kv_deserialize(rx, blocks.size(), interleaved, code);
}

}  // namespace

BerRecord run_ber_point(Scheme scheme, const ChannelModel& channel, double ebn0_db, const BerConfig& cfg,
                        std::uint64_t seed) {
    if (cfg.ensemble_blocks < 1) throw Error(ErrorCode::ConfigError, "ensemble needs at least one block");
    Rng rng(seed);
    BerRecord rec;
    rec.scheme = scheme;
    rec.channel = channel.kind;
    rec.ebn0_db = ebn0_db;

    const KvCode& code = cfg.code;
    const std::size_t M = cfg.ensemble_blocks;
    const bool interleaved = scheme == Scheme::KvInterleaved;
    std::uniform_int_distribution<int> sample(0, code.max_input());
    std::bernoulli_distribution coin(0.5);

    auto done = [&] {
        return rec.bit_errors >= static_cast<std::uint64_t>(cfg.min_errors) || rec.bits_sent >= cfg.max_bits;
    };

    while (!done()) {
        if (scheme == Scheme::Plain) {
            // same payload size as one KV ensemble
            Bits bits(M * code.block_bits());
            for (auto& b : bits) b = coin(rng);
            const auto rx = transmit_bits(bits, channel, ebn0_db, rng);
            for (std::size_t i = 0; i < bits.size(); ++i) rec.bit_errors += bits[i] != rx[i];
            rec.bits_sent += bits.size();
            continue;
        }
        std::vector<std::array<int, 4>> inputs(M);
        std::vector<KvBlock> blocks(M);
        for (std::size_t j = 0; j < M; ++j) {
            for (auto& v : inputs[j]) v = sample(rng);
            blocks[j] = kv_encode(inputs[j], code);
        }
        const auto first = send_ensemble(blocks, interleaved, code, channel, ebn0_db, rng);
        std::vector<KvDecoded> decoded(M);
        std::vector<std::size_t> retry;
        for (std::size_t j = 0; j < M; ++j) {
            decoded[j] = kv_decode(first[j], code);
            if (decoded[j].status == KvStatus::Uncorrectable) retry.push_back(j);
        }
        if (!retry.empty()) {
            std::vector<KvBlock> again;
            again.reserve(retry.size());
            for (auto j : retry) again.push_back(blocks[j]);
            const auto second = send_ensemble(again, interleaved, code, channel, ebn0_db, rng);
            for (std::size_t r = 0; r < retry.size(); ++r)
                decoded[retry[r]] = kv_decode_pair(first[retry[r]], second[r], code);
        }
        for (std::size_t j = 0; j < M; ++j) rec.bit_errors += count_bit_errors(inputs[j], decoded[j].values);
        rec.bits_sent += M * code.info_bits();
        rec.blocks_sent += M;
        rec.blocks_retransmitted += retry.size();
    }
    rec.ber = rec.bits_sent ? static_cast<double>(rec.bit_errors) / rec.bits_sent : 0.0;
    rec.flagged = rec.bit_errors < static_cast<std::uint64_t>(cfg.min_errors);
    return rec;
}

}  // namespace pltrack::phy
