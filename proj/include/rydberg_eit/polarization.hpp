#pragma once

#include <array>
#include <complex>

namespace rydberg {

/// Real lab-frame unit vector (x, y, z) describing a linear polarization.
/// The quantization axis is z.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    Vec3 normalized() const; ///< throws InvalidArgument for the zero vector
    friend bool operator==(const Vec3&, const Vec3&) = default;

    static Vec3 unit_z() { return {0.0, 0.0, 1.0}; }
    static Vec3 unit_x() { return {1.0, 0.0, 0.0}; }
    /// Linear polarization in the x-z plane at `degrees` from z. Exact at multiples of 90.
    static Vec3 in_xz_plane(double degrees);
};

/// Spherical components indexed by q + 1, i.e. {e_-1, e_0, e_+1}.
using SphericalComponents = std::array<std::complex<double>, 3>;

/// e_0 = z.eps, e_{+1} = -(x.eps + i y.eps)/sqrt2, e_{-1} = +(x.eps - i y.eps)/sqrt2.
/// Throws InvalidArgument for the zero vector; other inputs are normalized first.
SphericalComponents spherical_components(const Vec3& polarization);

/// Components with magnitude below this are treated as absent when deciding
/// whether a field drives a given Delta m.
inline constexpr double kPolarizationZero = 1e-14;

} // namespace rydberg
