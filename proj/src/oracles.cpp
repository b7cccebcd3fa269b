#include "rydberg_eit/oracles.hpp"

#include "rydberg_eit/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>

namespace rydberg::oracle {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using Float50 = boost::multiprecision::cpp_bin_float_50;

cpp_int factorial(int n)
{
    if (n < 0) throw InvalidArgument("negative factorial");
    cpp_int out = 1;
    for (int k = 2; k <= n; ++k) out *= k;
    return out;
}

cpp_rational delta(int ta, int tb, int tc)
{
    return cpp_rational(factorial((ta + tb - tc) / 2) * factorial((ta - tb + tc) / 2) * factorial((-ta + tb + tc) / 2),
                        factorial((ta + tb + tc) / 2 + 1));
}

bool triad(int ta, int tb, int tc)
{
    return ta >= 0 && tb >= 0 && tc >= 0 && (ta + tb + tc) % 2 == 0 && tc <= ta + tb && tc >= std::abs(ta - tb);
}

double finish(const cpp_rational& sum, const cpp_rational& radicand)
{
    const Float50 root = sqrt(Float50(numerator(radicand)) / Float50(denominator(radicand)));
    const Float50 value = Float50(numerator(sum)) / Float50(denominator(sum)) * root;
    return value.convert_to<double>();
}

} // namespace

double wigner3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3)
{
    for (auto [m, j] : {std::pair{m1, j1}, std::pair{m2, j2}, std::pair{m3, j3}})
        if (!is_projection_of(m, j)) throw InvalidArgument("invalid projection");
    const int a1 = j1.twice(), a2 = j2.twice(), a3 = j3.twice();
    const int b1 = m1.twice(), b2 = m2.twice(), b3 = m3.twice();
    if (b1 + b2 + b3 != 0 || !triad(a1, a2, a3)) return 0.0;

    cpp_rational radicand = delta(a1, a2, a3);
    for (int v : {(a1 + b1) / 2, (a1 - b1) / 2, (a2 + b2) / 2, (a2 - b2) / 2, (a3 + b3) / 2, (a3 - b3) / 2})
        radicand *= factorial(v);

    cpp_rational sum = 0;
    for (int k = 0; k <= (a1 + a2 + a3) / 2; ++k) {
        const int d[6] = {k, (a1 + a2 - a3) / 2 - k, (a1 - b1) / 2 - k, (a2 + b2) / 2 - k, (a3 - a2 + b1) / 2 + k,
                          (a3 - a1 - b2) / 2 + k};
        if (std::any_of(std::begin(d), std::end(d), [](int x) { return x < 0; })) continue;
        cpp_int den = 1;
        for (int x : d) den *= factorial(x);
        sum += cpp_rational(k % 2 == 0 ? 1 : -1, den);
    }
    if (((a1 - a2 - b3) / 2) % 2 != 0) sum = -sum;
    return finish(sum, radicand);
}

double wigner6j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4, HalfInteger j5, HalfInteger j6)
{
    const int a = j1.twice(), b = j2.twice(), c = j3.twice(), d = j4.twice(), e = j5.twice(), f = j6.twice();
    if (!triad(a, b, c) || !triad(a, e, f) || !triad(d, b, f) || !triad(d, e, c)) return 0.0;
    const cpp_rational radicand = delta(a, b, c) * delta(a, e, f) * delta(d, b, f) * delta(d, e, c);

    const int lower[4] = {(a + b + c) / 2, (a + e + f) / 2, (d + b + f) / 2, (d + e + c) / 2};
    const int upper[3] = {(a + b + d + e) / 2, (b + c + e + f) / 2, (c + a + f + d) / 2};
    cpp_rational sum = 0;
    for (int t = 0; t <= upper[0] + upper[1] + upper[2]; ++t) {
        bool ok = true;
        cpp_int den = 1;
        for (int l : lower) {
            if (t - l < 0) ok = false;
            else den *= factorial(t - l);
        }
        for (int u : upper) {
            if (u - t < 0) ok = false;
            else den *= factorial(u - t);
        }
        if (!ok) continue;
        sum += cpp_rational(factorial(t + 1) * (t % 2 == 0 ? 1 : -1), den);
    }
    return finish(sum, radicand);
}

std::vector<PairCoupling> brute_force_couplings(const StateBasis& basis, const FieldSpec& field)
{
    const auto e = spherical_components(field.polarization);
    const HalfInteger I = basis.scenario().nuclear_spin;
    std::vector<PairCoupling> out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const Sublevel& s = basis[i];
            const Sublevel& t = basis[k];
            if (s.role != field.lower || t.role != field.upper) continue;
            const int dm2 = t.m.twice() - s.m.twice();
            if (dm2 % 2 != 0 || std::abs(dm2) > 2) continue;
            const int q = dm2 / 2;
            if (std::abs(e[q + 1]) <= kPolarizationZero) continue;
            const HalfInteger j = basis.j_of(s.role);
            const HalfInteger jp = basis.j_of(t.role);
            const double sixj = wigner6j(jp, t.f, I, s.f, j, 1);
            const double threej = wigner3j(t.f, 1, s.f, -t.m, q, s.m);
            if (sixj == 0.0 || threej == 0.0) continue;
            const int phase = (t.f.twice() - t.m.twice()) / 2 + (jp.twice() + I.twice() + s.f.twice()) / 2 + 1;
            const double a = (phase % 2 == 0 ? 1.0 : -1.0) * std::sqrt((s.f.twice() + 1.0) * (t.f.twice() + 1.0)) *
                             sixj * threej;
            out.push_back(PairCoupling{i, k, q, e[q + 1] * a});
        }
    }
    return out;
}

std::vector<double> fine_structure_block_eigenvalues(HalfInteger j_lower, HalfInteger j_upper, double rf_rabi_mhz)
{
    std::vector<double> out;
    for (int tm = -j_lower.twice(); tm <= j_lower.twice(); tm += 2) {
        const auto m = HalfInteger::from_twice(tm);
        if (!is_projection_of(m, j_upper)) {
            out.push_back(0.0);
            continue;
        }
        // Block [[0, c], [c, 0]] has eigenvalues +-c.
        const double c = 0.5 * rf_rabi_mhz * std::abs(wigner3j(j_upper, 1, j_lower, -m, 0, m));
        out.push_back(c);
        out.push_back(-c);
    }
    for (int tm = -j_upper.twice(); tm <= j_upper.twice(); tm += 2)
        if (!is_projection_of(HalfInteger::from_twice(tm), j_lower)) out.push_back(0.0);
    std::sort(out.begin(), out.end());
    return out;
}

Scenario three_level_ladder()
{
    Scenario s;
    s.name = "three-level";
    s.nuclear_spin = 0;
    s.levels = {FineLevel{"g (J=0)", 0, Role::ground}, FineLevel{"e (J=1)", 1, Role::intermediate},
                FineLevel{"r (J=0)", 0, Role::rydberg_lower}, FineLevel{"r' (J=1)", 1, Role::rydberg_upper}};
    s.included_f = {std::vector<HalfInteger>{0}, std::vector<HalfInteger>{1}, std::vector<HalfInteger>{0},
                    std::vector<HalfInteger>{1}};
    s.max_abs_m[index_of(Role::intermediate)] = 0;
    s.max_abs_m[index_of(Role::rydberg_upper)] = 0;
    return s;
}

Scenario twelve_state_ladder()
{
    Scenario s;
    s.name = "twelve-state";
    s.nuclear_spin = 0;
    s.levels = {FineLevel{"S1/2", HalfInteger::from_twice(1), Role::ground},
                FineLevel{"P3/2", HalfInteger::from_twice(3), Role::intermediate},
                FineLevel{"D3/2", HalfInteger::from_twice(3), Role::rydberg_lower},
                FineLevel{"P1/2", HalfInteger::from_twice(1), Role::rydberg_upper}};
    s.included_f = {std::vector<HalfInteger>{HalfInteger::from_twice(1)},
                    std::vector<HalfInteger>{HalfInteger::from_twice(3)},
                    std::vector<HalfInteger>{HalfInteger::from_twice(3)},
                    std::vector<HalfInteger>{HalfInteger::from_twice(1)}};
    return s;
}

} // namespace rydberg::oracle
