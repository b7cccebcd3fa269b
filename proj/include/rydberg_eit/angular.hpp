#pragma once

#include "rydberg_eit/half_integer.hpp"

namespace rydberg::angular {

/// Wigner 3j symbol ( j1 j2 j3 ; m1 m2 m3 ).
///
/// Evaluated with the Racah sum over prime-factorized factorials. The
/// alternating sum is accumulated as an exact integer and only the final
/// square root is rounded, so selection-rule zeros come out as exactly 0.0.
/// Throws InvalidArgument when some m_i is not a projection of j_i.
double wigner3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3);

/// Wigner 6j symbol { j1 j2 j3 ; j4 j5 j6 }. Exactly 0 when any of the four
/// triads (j1 j2 j3) (j1 j5 j6) (j4 j2 j6) (j4 j5 j3) is not a triangle.
double wigner6j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4, HalfInteger j5, HalfInteger j6);

/// Clebsch-Gordan coefficient < j1 m1 ; j2 m2 | j m >, Condon-Shortley phase.
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger j, HalfInteger m);

/// true when (a, b, c) satisfy the triangle rule and a + b + c is integral.
bool triangle(HalfInteger a, HalfInteger b, HalfInteger c);

/// Angular part of the electric-dipole matrix element between hyperfine
/// sublevels of two fine-structure levels sharing nuclear spin `nuclear_spin`.
///
/// Returns A = < J' F' mF' | d_q | J F mF > / < J' || d || J >, i.e. the
/// amplitude for the transition from (J F mF) to (J' F' mF') driven by the
/// spherical component q = mF' - mF:
///
///   A = (-1)^(F' - mF') ( F' 1 F ; -mF' q mF )
///       * (-1)^(J' + I + F + 1) sqrt((2F+1)(2F'+1)) { J' F' I ; F J 1 }
///
/// This is the Condon-Shortley convention with the operator acting on the
/// electronic angular momentum only; the same convention is used for every
/// field so that the hyperfine and fine-structure bases are related by a
/// unitary transformation. A is exactly 0 iff the transition is forbidden.
///
/// Throws InvalidArgument for q outside {-1, 0, +1}, for F not in
/// |J - I| .. J + I (or F' likewise), or for m not a projection of F.
double dipole_angular_factor(HalfInteger j, HalfInteger f, HalfInteger mf, HalfInteger j_prime, HalfInteger f_prime,
                             HalfInteger mf_prime, int q, HalfInteger nuclear_spin);

/// Fine-structure analogue: < J' mJ' | d_q | J mJ > / < J' || d || J >.
double fine_dipole_angular_factor(HalfInteger j, HalfInteger mj, HalfInteger j_prime, HalfInteger mj_prime, int q);

} // namespace rydberg::angular
