#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "botreg/dataset.hpp"

namespace botreg {

struct SynthConfig {
    std::size_t n_accounts = 0;
    double credulous_fraction = 0.25;
    double noise_std = 4.0;  // percentage points
    // One weight per column of the combined 30-wide feature layout; empty
    // selects the built-in defaults (the two cap scores plus the profile
    // image and biography flags). All-zero weights are rejected: the
    // generator exists to plant a recoverable signal.
    std::vector<double> planted_weights;
    std::uint64_t seed = 0;
    std::int64_t snapshot_time = 1672531200;  // 2023-01-01T00:00:00Z
};

struct SynthData {
    std::vector<AccountProfile> profiles;
    std::vector<BotometerRecord> scores;
    Dataset ground_truth;  // truth rows only; joining happens at load time

    bool operator==(const SynthData&) const = default;
};

const std::vector<double>& default_planted_weights();

// Draws plausible profiles and score records, then plants
// target = clip(weights . features + gaussian(0, noise_std), 0, 100).
// The top round(n * credulous_fraction) targets (ties broken by account
// order, count clamped to [1, n-1]) are labeled credulous.
SynthData generate(const SynthConfig& cfg);

// Writes profiles.jsonl, botometer.csv, and ground_truth.csv into dir
// using the ingest writers, so the files load back losslessly.
void write_synth_files(const SynthData& data, const std::string& dir);

}  // namespace botreg
