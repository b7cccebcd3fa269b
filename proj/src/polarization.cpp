#include "rydberg_eit/polarization.hpp"

#include "rydberg_eit/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rydberg {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const
{
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("polarization vector must be finite and non-zero");
    // Already unit length to rounding: keep the bits so serialized vectors round-trip.
    if (std::abs(n - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) return *this;
    return {x / n, y / n, z / n};
}

Vec3 Vec3::in_xz_plane(double degrees)
{
    const double turns = degrees / 90.0;
    if (turns == std::round(turns)) {
        switch (((static_cast<long>(std::round(turns)) % 4) + 4) % 4) {
        case 0: return {0.0, 0.0, 1.0};
        case 1: return {1.0, 0.0, 0.0};
        case 2: return {0.0, 0.0, -1.0};
        default: return {-1.0, 0.0, 0.0};
        }
    }
    const double rad = degrees * std::numbers::pi / 180.0;
    return {std::sin(rad), 0.0, std::cos(rad)};
}

SphericalComponents spherical_components(const Vec3& polarization)
{
    const Vec3 e = polarization.normalized();
    const double s = std::numbers::sqrt2 / 2.0;
    return {std::complex<double>(s * e.x, -s * e.y), std::complex<double>(e.z, 0.0),
            std::complex<double>(-s * e.x, -s * e.y)};
}

} // namespace rydberg
