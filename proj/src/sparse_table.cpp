#include "ultralis/sparse_table.hpp"

#include <stdexcept>

namespace ultralis {

SparseTableArgmax::SparseTableArgmax(std::span<const std::uint64_t> keys)
    : keys_(keys.data()), size_(keys.size()) {
    if (size_ > std::size_t{0xffffffffu}) throw std::length_error("sparse table limited to 2^32 entries");
    if (size_ < 2) return;
    const unsigned levels = std::bit_width(size_) - 1;
    table_.resize(static_cast<std::size_t>(levels) * size_);
    for (unsigned level = 1; level <= levels; ++level) {
        std::uint32_t* row = table_.data() + (level - 1) * size_;
        const std::size_t half = std::size_t{1} << (level - 1);
        const std::size_t count = size_ - (std::size_t{1} << level) + 1;
        if (level == 1) {
            for (std::size_t i = 0; i < count; ++i) {
                row[i] = static_cast<std::uint32_t>(keys_[i] > keys_[i + 1] ? i : i + 1);
            }
        } else {
            const std::uint32_t* prev = row - size_;
            for (std::size_t i = 0; i < count; ++i) {
                const std::uint32_t a = prev[i];
                const std::uint32_t b = prev[i + half];
                row[i] = keys_[a] > keys_[b] ? a : b;
            }
        }
    }
}

}  // namespace ultralis
