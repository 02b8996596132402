#include "thermodwell/format.hpp"

#include <array>
#include <charconv>

namespace thermodwell {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), end);
}

}  // namespace thermodwell
