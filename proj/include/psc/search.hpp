#pragma once

// Exhaustive, resumable scan of [lo, hi] for members of M_m.
//
// The range is cut into fixed-size blocks aligned at lo. Workers claim
// blocks from a shared counter; the calling thread merges finished blocks
// in ascending order and is the only writer of the checkpoint file, which
// always describes a contiguous scanned prefix [lo, next_unscanned).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "psc/arith.hpp"

namespace psc::search {

inline constexpr int kCheckpointSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultBlockSize = 1024;

struct Failure {
    Nat n;
    std::string message;
};

struct Checkpoint {
    int schema_version = kCheckpointSchemaVersion;
    Nat modulus_m;
    Nat lo;
    Nat hi;
    Nat next_unscanned;
    std::uint64_t block_size = kDefaultBlockSize;
    std::vector<Nat> found;         // sorted, all in [lo, next_unscanned)
    std::vector<Failure> failures;  // factorization-cap failures, sorted by n

    bool complete() const { return next_unscanned > hi; }
};

/// Thrown when a checkpoint file cannot be used for the requested scan.
class CheckpointMismatch : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string checkpoint_to_string(const Checkpoint& cp);
Checkpoint checkpoint_from_string(const std::string& text);
Checkpoint load_checkpoint(const std::filesystem::path& path);
/// Write-then-rename, so readers never observe a partial file.
void save_checkpoint(const Checkpoint& cp, const std::filesystem::path& path);

struct Options {
    Nat lo = 1;
    Nat hi = 1;
    Nat m = 0;
    unsigned jobs = 1;
    std::uint64_t block_size = kDefaultBlockSize;
    std::optional<std::filesystem::path> checkpoint;
    std::optional<std::uint64_t> max_blocks;  // stop after this many blocks
    std::uint64_t factor_cap = arith::kDefaultFactorCap;
};

/// Runs (or resumes) the scan and returns the final state.
Checkpoint run(const Options& options);

}  // namespace psc::search
