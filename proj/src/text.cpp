#include "bms/text.hpp"

namespace bms {

Text attach_sentinel(std::string_view raw) {
    const std::size_t hit = raw.find(static_cast<char>(kSentinel));
    if (hit != std::string_view::npos) throw SentinelCollision(hit);
    std::string bytes(raw);
    bytes.push_back(static_cast<char>(kSentinel));
    return Text(std::move(bytes));
}

}  // namespace bms
