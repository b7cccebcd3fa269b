#pragma once

#include <compare>
#include <cstdlib>
#include <functional>
#include <string>
#include <string_view>

namespace rydberg {

/// Exact angular momentum quantum number, stored as twice its value so that
/// half-integers (J = 5/2, m = -1/2, ...) are represented without rounding.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    constexpr HalfInteger(int value) : twice_(2 * value) {} // NOLINT: integers convert implicitly

    static constexpr HalfInteger from_twice(int twice)
    {
        HalfInteger h;
        h.twice_ = twice;
        return h;
    }

    /// Accepts "7/2", "-1/2", "3", "2.5". Throws InvalidArgument otherwise.
    static HalfInteger parse(std::string_view text);

    /// Accepts a double that is an exact multiple of 1/2.
    static HalfInteger from_double(double value);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr HalfInteger abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

    std::string str() const;

    constexpr HalfInteger operator-() const { return from_twice(-twice_); }
    constexpr HalfInteger& operator+=(HalfInteger o)
    {
        twice_ += o.twice_;
        return *this;
    }
    constexpr HalfInteger& operator-=(HalfInteger o)
    {
        twice_ -= o.twice_;
        return *this;
    }
    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return a += b; }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return a -= b; }

    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

private:
    int twice_ = 0;
};

/// true when (j - m) is integral and |m| <= j, with j >= 0.
constexpr bool is_projection_of(HalfInteger m, HalfInteger j)
{
    return j.twice() >= 0 && (j.twice() - m.twice()) % 2 == 0 && std::abs(m.twice()) <= j.twice();
}

/// Integer difference (a - b) for quantum numbers known to differ by an integer.
constexpr int integer_difference(HalfInteger a, HalfInteger b) { return (a.twice() - b.twice()) / 2; }

} // namespace rydberg

template <>
struct std::hash<rydberg::HalfInteger> {
    std::size_t operator()(rydberg::HalfInteger h) const noexcept { return std::hash<int>{}(h.twice()); }
};
