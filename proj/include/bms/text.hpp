#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bms {

// 1-based text position; 0 means "none" where a position is optional.
using Pos = int;
using Sym = unsigned char;

// Fixed terminator byte. Inputs containing it are rejected, not re-mapped.
inline constexpr Sym kSentinel = 0x00;

struct SentinelCollision : std::runtime_error {
    explicit SentinelCollision(std::size_t offset)
        : std::runtime_error("input contains the sentinel byte 0x00 at offset " +
                             std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};

// A byte sequence whose final symbol is the sentinel. For texts produced by
// attach_sentinel the sentinel occurs nowhere else, which the suffix index
// relies on. Immutable after construction; positions are 1-based.
class Text {
public:
    Text() = default;
    explicit Text(std::string bytes) : bytes_(std::move(bytes)) {}

    Pos n() const { return static_cast<Pos>(bytes_.size()); }
    Sym at(Pos p) const { return static_cast<Sym>(bytes_[static_cast<std::size_t>(p) - 1]); }

    // The len bytes starting at 1-based position pos.
    std::string_view span(Pos pos, Pos len) const {
        return std::string_view(bytes_).substr(static_cast<std::size_t>(pos) - 1,
                                               static_cast<std::size_t>(len));
    }

    const std::string& bytes() const { return bytes_; }
    std::string_view without_sentinel() const {
        std::string_view v(bytes_);
        v.remove_suffix(1);
        return v;
    }

    friend bool operator==(const Text&, const Text&) = default;

private:
    std::string bytes_;
};

// Appends the sentinel; throws SentinelCollision if raw already contains it.
Text attach_sentinel(std::string_view raw);

}  // namespace bms
