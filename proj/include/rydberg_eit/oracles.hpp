#pragma once

// Reference computations used to cross-check the production code paths. They
// favour directness over speed and share no arithmetic with the library:
// symbols are summed as exact big rationals, couplings are found by looping
// over every state pair, and dressed spectra come from closed-form 2x2 blocks.

#include "rydberg_eit/couplings.hpp"
#include "rydberg_eit/half_integer.hpp"
#include "rydberg_eit/model.hpp"

#include <complex>
#include <vector>

namespace rydberg::oracle {

/// Racah's single-sum formula evaluated with exact rational arithmetic and a
/// 50-digit square root.
double wigner3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3);
double wigner6j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4, HalfInteger j5, HalfInteger j6);

struct PairCoupling {
    std::size_t from = 0;
    std::size_t to = 0;
    int q = 0;
    std::complex<double> amplitude;
};

/// O(N^2) loop over all ordered basis pairs, keeping those in the field's
/// roles whose hyperfine dipole factor (from the exact symbols above) and
/// polarization component are both non-zero.
std::vector<PairCoupling> brute_force_couplings(const StateBasis& basis, const FieldSpec& field);

/// Dressed energies (MHz, ascending) of J_lower <-> J_upper under a linearly
/// polarized RF field, from the explicit 1x1 / 2x2 blocks of fixed m_J:
/// each coupled pair gives +-(rabi/2)|<J_upper m|d_0|J_lower m>|, each
/// unpaired sublevel a zero.
std::vector<double> fine_structure_block_eigenvalues(HalfInteger j_lower, HalfInteger j_upper, double rf_rabi_mhz);

/// Four-state ladder (I = 0) with one sublevel per level: an effective
/// three-level ladder plus a spectator upper Rydberg state.
Scenario three_level_ladder();

/// Twelve-state ladder, I = 0: S1/2 (2) -> P3/2 (4) -> D3/2 (4) <-> P1/2 (2).
Scenario twelve_state_ladder();

} // namespace rydberg::oracle
