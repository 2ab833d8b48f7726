#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dbl {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

using LabelView = std::span<Word>;
using ConstLabelView = std::span<const Word>;

// Word-wise set algebra over equally sized bitmaps.

inline bool test_bit(ConstLabelView a, std::size_t i) {
    return (a[i / kWordBits] >> (i % kWordBits)) & 1u;
}

inline void set_bit(LabelView a, std::size_t i) { a[i / kWordBits] |= Word{1} << (i % kWordBits); }

inline void clear_bit(LabelView a, std::size_t i) {
    a[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

inline bool is_empty(ConstLabelView a) {
    for (Word w : a)
        if (w != 0) return false;
    return true;
}

inline bool intersects(ConstLabelView a, ConstLabelView b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((a[i] & b[i]) != 0) return true;
    return false;
}

/// a ⊆ b
inline bool is_subset(ConstLabelView a, ConstLabelView b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

/// dst |= src; returns whether dst changed.
inline bool unite(LabelView dst, ConstLabelView src) {
    Word changed = 0;
    for (std::size_t i = 0; i < dst.size(); ++i) {
        changed |= src[i] & ~dst[i];
        dst[i] |= src[i];
    }
    return changed != 0;
}

/// dst &= ~src; returns whether dst changed.
inline bool subtract(LabelView dst, ConstLabelView src) {
    Word changed = 0;
    for (std::size_t i = 0; i < dst.size(); ++i) {
        changed |= dst[i] & src[i];
        dst[i] &= ~src[i];
    }
    return changed != 0;
}

inline void intersect_with(LabelView dst, ConstLabelView src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

inline std::size_t popcount(ConstLabelView a) {
    std::size_t c = 0;
    for (Word w : a) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

/// Owning fixed-width bit set. Used for scratch sets such as removal sets.
class BitLabel {
public:
    BitLabel() = default;
    explicit BitLabel(std::size_t width) : width_(width), words_(words_for(width), 0) {}
    BitLabel(std::size_t width, ConstLabelView bits) : width_(width), words_(bits.begin(), bits.end()) {}

    std::size_t width() const noexcept { return width_; }
    LabelView view() noexcept { return words_; }
    ConstLabelView view() const noexcept { return words_; }
    operator LabelView() noexcept { return words_; }
    operator ConstLabelView() const noexcept { return words_; }

    bool test(std::size_t i) const { return test_bit(words_, i); }
    void set(std::size_t i) { set_bit(words_, i); }
    void reset(std::size_t i) { clear_bit(words_, i); }
    bool empty() const { return is_empty(words_); }
    std::size_t count() const { return popcount(words_); }
    void assign(ConstLabelView bits) { words_.assign(bits.begin(), bits.end()); }

    /// Set bit positions in ascending order.
    std::vector<std::size_t> members() const;

    friend bool operator==(const BitLabel&, const BitLabel&) = default;

private:
    std::size_t width_ = 0;
    std::vector<Word> words_;
};

inline std::vector<std::size_t> BitLabel::members() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        Word bits = words_[w];
        while (bits != 0) {
            out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

/// One bitmap of `width` bits per vertex, stored contiguously.
class LabelTable {
public:
    LabelTable() = default;
    LabelTable(std::size_t rows, std::size_t width)
        : width_(width), stride_(words_for(width)), words_(rows * stride_, 0), rows_(rows) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t stride() const noexcept { return stride_; }

    LabelView operator[](std::size_t row) noexcept { return {words_.data() + row * stride_, stride_}; }
    ConstLabelView operator[](std::size_t row) const noexcept {
        return {words_.data() + row * stride_, stride_};
    }

    void add_row() {
        words_.resize(words_.size() + stride_, 0);
        ++rows_;
    }

    std::span<const Word> raw() const noexcept { return words_; }
    std::span<Word> raw() noexcept { return words_; }

    friend bool operator==(const LabelTable&, const LabelTable&) = default;

private:
    std::size_t width_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> words_;
    std::size_t rows_ = 0;
};

} // namespace dbl
