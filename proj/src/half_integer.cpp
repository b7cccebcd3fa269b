#include "rydberg_eit/half_integer.hpp"

#include "rydberg_eit/errors.hpp"

#include <charconv>
#include <cmath>

namespace rydberg {

namespace {

int parse_int(std::string_view text, std::string_view whole)
{
    int value = 0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw InvalidArgument("not a half-integer: '" + std::string(whole) + "'");
    return value;
}

} // namespace

HalfInteger HalfInteger::parse(std::string_view text)
{
    const std::string_view whole = text;
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const int num = parse_int(text.substr(0, slash), whole);
        const int den = parse_int(text.substr(slash + 1), whole);
        if (den == 1) return HalfInteger(num);
        if (den != 2) throw InvalidArgument("denominator must be 1 or 2: '" + std::string(whole) + "'");
        return from_twice(num);
    }
    if (text.find('.') != std::string_view::npos) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw InvalidArgument("not a half-integer: '" + std::string(whole) + "'");
        return from_double(value);
    }
    return HalfInteger(parse_int(text, whole));
}

HalfInteger HalfInteger::from_double(double value)
{
    const double twice = 2.0 * value;
    const double rounded = std::round(twice);
    if (!std::isfinite(value) || std::abs(twice - rounded) > 1e-9 || std::abs(rounded) > 1e6)
        throw InvalidArgument("not a multiple of 1/2: " + std::to_string(value));
    return from_twice(static_cast<int>(rounded));
}

std::string HalfInteger::str() const
{
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

} // namespace rydberg
