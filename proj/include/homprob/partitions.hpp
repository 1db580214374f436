#pragma once

#include <array>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace homprob {

/// Partition of {0, ..., n-1} into disjoint nonempty blocks. Blocks are
/// ordered by their smallest element and each block is sorted, so the
/// enumeration order is deterministic.
struct SetPartition {
    std::vector<std::vector<unsigned>> blocks;

    unsigned size() const {
        unsigned n = 0;
        for (const auto& b : blocks) n += static_cast<unsigned>(b.size());
        return n;
    }
};

inline constexpr unsigned kMaxPartitionSize = 12;

/// All set partitions of {0..n-1}, Bell(n) of them, generated via restricted
/// growth strings (element i joins block rgs[i]).
inline std::vector<SetPartition> enumerate_partitions(unsigned n) {
    if (n < 1 || n > kMaxPartitionSize)
        throw std::out_of_range("partition size must be between 1 and " +
                                std::to_string(kMaxPartitionSize) + ", got " + std::to_string(n));
    std::vector<SetPartition> out;
    std::vector<unsigned> rgs(n, 0);
    while (true) {
        SetPartition p;
        for (unsigned i = 0; i < n; ++i) {
            if (rgs[i] >= p.blocks.size()) p.blocks.emplace_back();
            p.blocks[rgs[i]].push_back(i);
        }
        out.push_back(std::move(p));
        // advance the restricted growth string: rgs[i] <= 1 + max(rgs[0..i-1])
        unsigned i = n;
        while (i-- > 1) {
            unsigned maxPrefix = 0;
            for (unsigned j = 0; j < i; ++j)
                if (rgs[j] > maxPrefix) maxPrefix = rgs[j];
            if (rgs[i] <= maxPrefix) {
                ++rgs[i];
                for (unsigned j = i + 1; j < n; ++j) rgs[j] = 0;
                break;
            }
            rgs[i] = 0;
        }
        if (i == 0) break;
    }
    return out;
}

/// Cached view of enumerate_partitions for hot loops.
inline const std::vector<SetPartition>& partitions_of(unsigned n) {
    static std::array<std::vector<SetPartition>, kMaxPartitionSize + 1> cache;
    static std::array<std::once_flag, kMaxPartitionSize + 1> flags;
    if (n < 1 || n > kMaxPartitionSize)
        throw std::out_of_range("partition size must be between 1 and " +
                                std::to_string(kMaxPartitionSize) + ", got " + std::to_string(n));
    std::call_once(flags[n], [n] { cache[n] = enumerate_partitions(n); });
    return cache[n];
}

}  // namespace homprob
