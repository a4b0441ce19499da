#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ultralis {

/// Argmax over index ranges of a fixed key array, O(1) per query after
/// O(n log n) construction. Keys must be pairwise distinct for the argmax to
/// be well defined; the table stores indices, not keys.
class SparseTableArgmax {
public:
    SparseTableArgmax() = default;
    explicit SparseTableArgmax(std::span<const std::uint64_t> keys);

    std::size_t size() const { return size_; }

    /// Index of the largest key in [first, last] (0-based, inclusive).
    std::uint32_t argmax(std::size_t first, std::size_t last) const {
        const std::size_t len = last - first + 1;
        if (len == 1) return static_cast<std::uint32_t>(first);
        const unsigned level = std::bit_width(len) - 1;
        const std::uint32_t* row = table_.data() + (level - 1) * size_;
        const std::uint32_t a = row[first];
        const std::uint32_t b = row[last + 1 - (std::size_t{1} << level)];
        return keys_[a] > keys_[b] ? a : b;
    }

    std::size_t memory_bytes() const { return table_.size() * sizeof(std::uint32_t); }

private:
    const std::uint64_t* keys_ = nullptr;
    std::size_t size_ = 0;
    // level j >= 1 stored at offset (j-1)*size_; entry i covers [i, i + 2^j)
    std::vector<std::uint32_t> table_;
};

}  // namespace ultralis
