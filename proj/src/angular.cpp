#include "rydberg_eit/angular.hpp"

#include "rydberg_eit/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

namespace rydberg::angular {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr int kMaxFactorialArgument = 400;

const std::vector<int>& primes()
{
    static const std::vector<int> table = [] {
        std::vector<bool> composite(kMaxFactorialArgument + 2, false);
        std::vector<int> out;
        for (int n = 2; n <= kMaxFactorialArgument + 1; ++n) {
            if (composite[n]) continue;
            out.push_back(n);
            for (int k = 2 * n; k <= kMaxFactorialArgument + 1; k += n) composite[k] = true;
        }
        return out;
    }();
    return table;
}

// A positive rational stored by its prime exponents.
class Factorized {
public:
    Factorized() : exponents_(primes().size(), 0) {}

    void multiply_factorial(int n, int power = 1)
    {
        if (n < 0) throw InvalidArgument("negative factorial argument");
        if (n > kMaxFactorialArgument) throw InvalidArgument("angular momentum too large for exact evaluation");
        const auto& p = primes();
        for (std::size_t i = 0; i < p.size() && p[i] <= n; ++i) {
            int count = 0;
            for (long pk = p[i]; pk <= n; pk *= p[i]) count += static_cast<int>(n / pk);
            exponents_[i] += power * count;
        }
    }
    void divide_factorial(int n) { multiply_factorial(n, -1); }

    int& operator[](std::size_t i) { return exponents_[i]; }
    int operator[](std::size_t i) const { return exponents_[i]; }
    std::size_t size() const { return exponents_.size(); }

private:
    std::vector<int> exponents_;
};

struct Term {
    int sign;
    Factorized factor;
};

// sign * integer * scale * sqrt(radicand), converting to floating point only here.
double evaluate(int sign, const BigInt& integer, const Factorized& scale, const Factorized& radicand)
{
    if (integer == 0) return 0.0;
    const auto& p = primes();
    long double magnitude = integer.convert_to<long double>();
    long double odd_part = 1.0L;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const int twice_exponent = 2 * scale[i] + radicand[i];
        if (twice_exponent == 0) continue;
        int whole = twice_exponent / 2;
        if (twice_exponent < 0 && twice_exponent % 2 != 0) --whole;
        const int remainder = twice_exponent - 2 * whole;
        const long double base = p[i];
        for (int k = 0; k < whole; ++k) magnitude *= base;
        for (int k = 0; k > whole; --k) magnitude /= base;
        if (remainder != 0) odd_part *= base;
    }
    return static_cast<double>(sign * magnitude * std::sqrt(odd_part));
}

// Sums signed factorized terms exactly: returns (N, s) with sum = N * s.
std::pair<BigInt, Factorized> exact_sum(const std::vector<Term>& terms)
{
    Factorized scale;
    if (terms.empty()) return {BigInt(0), scale};
    for (std::size_t i = 0; i < scale.size(); ++i) {
        int lowest = terms.front().factor[i];
        for (const auto& t : terms) lowest = std::min(lowest, t.factor[i]);
        scale[i] = lowest;
    }
    const auto& p = primes();
    BigInt total = 0;
    for (const auto& t : terms) {
        BigInt value = 1;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const int e = t.factor[i] - scale[i];
            if (e > 0) value *= boost::multiprecision::pow(BigInt(p[i]), static_cast<unsigned>(e));
        }
        total += t.sign > 0 ? value : BigInt(-value);
    }
    return {total, scale};
}

int parity(int n) { return (n % 2 == 0) ? 1 : -1; }

void require_projection(HalfInteger m, HalfInteger j)
{
    if (!is_projection_of(m, j))
        throw InvalidArgument("m = " + m.str() + " is not a projection of j = " + j.str());
}

void require_angular_momentum(HalfInteger j)
{
    if (j.twice() < 0) throw InvalidArgument("negative angular momentum " + j.str());
}

struct KeyHash {
    std::size_t operator()(const std::array<int, 7>& key) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (int v : key) h = (h ^ static_cast<std::size_t>(v + 1024)) * 1099511628211ull;
        return h;
    }
};

// Per-thread memo; symbol values never change once computed.
template <typename Compute>
double cached(const std::array<int, 7>& key, Compute&& compute)
{
    thread_local std::unordered_map<std::array<int, 7>, double, KeyHash> cache;
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const double value = compute();
    cache.emplace(key, value);
    return value;
}

double compute3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3)
{
    const int a = (tj1 + tj2 - tj3) / 2;
    const int b = (tj1 - tj2 + tj3) / 2;
    const int c = (-tj1 + tj2 + tj3) / 2;
    const int j1pm1 = (tj1 + tm1) / 2, j1mm1 = (tj1 - tm1) / 2;
    const int j2pm2 = (tj2 + tm2) / 2, j2mm2 = (tj2 - tm2) / 2;
    const int j3pm3 = (tj3 + tm3) / 2, j3mm3 = (tj3 - tm3) / 2;
    const int shift1 = (tj3 - tj2 + tm1) / 2;
    const int shift2 = (tj3 - tj1 - tm2) / 2;

    Factorized radicand;
    for (int n : {a, b, c, j1pm1, j1mm1, j2pm2, j2mm2, j3pm3, j3mm3}) radicand.multiply_factorial(n);
    radicand.divide_factorial((tj1 + tj2 + tj3) / 2 + 1);

    const int kmin = std::max({0, -shift1, -shift2});
    const int kmax = std::min({a, j1mm1, j2pm2});
    std::vector<Term> terms;
    for (int k = kmin; k <= kmax; ++k) {
        Term t{parity(k), Factorized{}};
        for (int n : {k, a - k, j1mm1 - k, j2pm2 - k, shift1 + k, shift2 + k}) t.factor.divide_factorial(n);
        terms.push_back(std::move(t));
    }
    auto [integer, scale] = exact_sum(terms);
    return evaluate(parity((tj1 - tj2 - tm3) / 2), integer, scale, radicand);
}

void multiply_delta(Factorized& f, int ta, int tb, int tc)
{
    f.multiply_factorial((ta + tb - tc) / 2);
    f.multiply_factorial((ta - tb + tc) / 2);
    f.multiply_factorial((-ta + tb + tc) / 2);
    f.divide_factorial((ta + tb + tc) / 2 + 1);
}

double compute6j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6)
{
    const std::array<int, 4> lower{(tj1 + tj2 + tj3) / 2, (tj1 + tj5 + tj6) / 2, (tj4 + tj2 + tj6) / 2,
                                   (tj4 + tj5 + tj3) / 2};
    const std::array<int, 3> upper{(tj1 + tj2 + tj4 + tj5) / 2, (tj2 + tj3 + tj5 + tj6) / 2,
                                   (tj3 + tj1 + tj6 + tj4) / 2};

    Factorized radicand;
    multiply_delta(radicand, tj1, tj2, tj3);
    multiply_delta(radicand, tj1, tj5, tj6);
    multiply_delta(radicand, tj4, tj2, tj6);
    multiply_delta(radicand, tj4, tj5, tj3);

    const int tmin = *std::max_element(lower.begin(), lower.end());
    const int tmax = *std::min_element(upper.begin(), upper.end());
    std::vector<Term> terms;
    for (int t = tmin; t <= tmax; ++t) {
        Term term{parity(t), Factorized{}};
        term.factor.multiply_factorial(t + 1);
        for (int l : lower) term.factor.divide_factorial(t - l);
        for (int u : upper) term.factor.divide_factorial(u - t);
        terms.push_back(std::move(term));
    }
    auto [integer, scale] = exact_sum(terms);
    return evaluate(1, integer, scale, radicand);
}

} // namespace

bool triangle(HalfInteger a, HalfInteger b, HalfInteger c)
{
    const int ta = a.twice(), tb = b.twice(), tc = c.twice();
    if (ta < 0 || tb < 0 || tc < 0) return false;
    if ((ta + tb + tc) % 2 != 0) return false;
    return tc <= ta + tb && tc >= std::abs(ta - tb);
}

double wigner3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3)
{
    require_projection(m1, j1);
    require_projection(m2, j2);
    require_projection(m3, j3);
    if (m1.twice() + m2.twice() + m3.twice() != 0) return 0.0;
    if (!triangle(j1, j2, j3)) return 0.0;
    const std::array<int, 7> key{3, j1.twice(), j2.twice(), j3.twice(), m1.twice(), m2.twice(), m3.twice()};
    return cached(key, [&] { return compute3j(key[1], key[2], key[3], key[4], key[5], key[6]); });
}

double wigner6j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4, HalfInteger j5, HalfInteger j6)
{
    for (auto j : {j1, j2, j3, j4, j5, j6}) require_angular_momentum(j);
    if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) || !triangle(j4, j5, j3)) return 0.0;
    const std::array<int, 7> key{6, j1.twice(), j2.twice(), j3.twice(), j4.twice(), j5.twice(), j6.twice()};
    return cached(key, [&] { return compute6j(key[1], key[2], key[3], key[4], key[5], key[6]); });
}

double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger j, HalfInteger m)
{
    require_projection(m1, j1);
    require_projection(m2, j2);
    require_projection(m, j);
    if (m1 + m2 != m) return 0.0;
    const double symbol = wigner3j(j1, j2, j, m1, m2, -m);
    if (symbol == 0.0) return 0.0;
    return parity((j1.twice() - j2.twice() + m.twice()) / 2) * std::sqrt(j.twice() + 1.0) * symbol;
}

double dipole_angular_factor(HalfInteger j, HalfInteger f, HalfInteger mf, HalfInteger j_prime, HalfInteger f_prime,
                             HalfInteger mf_prime, int q, HalfInteger nuclear_spin)
{
    if (q < -1 || q > 1) throw InvalidArgument("spherical component q must be -1, 0 or +1");
    require_angular_momentum(nuclear_spin);
    if (!triangle(j, nuclear_spin, f))
        throw InvalidArgument("F = " + f.str() + " is not reachable from J = " + j.str() + " and I = " +
                              nuclear_spin.str());
    if (!triangle(j_prime, nuclear_spin, f_prime))
        throw InvalidArgument("F' = " + f_prime.str() + " is not reachable from J' = " + j_prime.str() +
                              " and I = " + nuclear_spin.str());
    require_projection(mf, f);
    require_projection(mf_prime, f_prime);
    if (mf_prime.twice() - mf.twice() != 2 * q) return 0.0;

    const double sixj = wigner6j(j_prime, f_prime, nuclear_spin, f, j, 1);
    if (sixj == 0.0) return 0.0;
    const double threej = wigner3j(f_prime, 1, f, -mf_prime, q, mf);
    if (threej == 0.0) return 0.0;

    const int reduced_phase = (j_prime.twice() + nuclear_spin.twice() + f.twice()) / 2 + 1;
    const int projection_phase = (f_prime.twice() - mf_prime.twice()) / 2;
    return parity(reduced_phase + projection_phase) * std::sqrt((f.twice() + 1.0) * (f_prime.twice() + 1.0)) * sixj *
           threej;
}

double fine_dipole_angular_factor(HalfInteger j, HalfInteger mj, HalfInteger j_prime, HalfInteger mj_prime, int q)
{
    if (q < -1 || q > 1) throw InvalidArgument("spherical component q must be -1, 0 or +1");
    require_projection(mj, j);
    require_projection(mj_prime, j_prime);
    if (mj_prime.twice() - mj.twice() != 2 * q) return 0.0;
    const double threej = wigner3j(j_prime, 1, j, -mj_prime, q, mj);
    if (threej == 0.0) return 0.0;
    return parity((j_prime.twice() - mj_prime.twice()) / 2) * threej;
}

} // namespace rydberg::angular
