#pragma once

#include <cmath>
#include <limits>

namespace leo {

inline constexpr double kJ1FirstRoot = 3.8317059702075123156;

namespace detail {

// Ascending series of J1(x)/x; accurate for |x| <= 15.
template <typename Scalar>
Scalar j1_over_x_series(Scalar x) {
    const Scalar q = x * x / Scalar(4);
    Scalar term = Scalar(0.5);
    Scalar sum = term;
    for (int k = 0; k < 200; ++k) {
        term *= -q / (Scalar(k + 1) * Scalar(k + 2));
        sum += term;
        if (std::abs(term) <= std::numeric_limits<Scalar>::epsilon() * std::abs(sum) * Scalar(1e-3)) break;
    }
    return sum;
}

// Hankel asymptotic expansion of J1(x) for large positive x, truncated at the
// smallest term.
template <typename Scalar>
Scalar j1_asymptotic(Scalar x) {
    constexpr Scalar mu = 4;  // 4 nu^2
    Scalar p = 1;
    Scalar q = 0;
    Scalar a = 1;  // a_k / x^k
    Scalar last = std::numeric_limits<Scalar>::infinity();
    for (int k = 1; k < 80; ++k) {
        const Scalar odd = Scalar(2 * k - 1);
        const Scalar next = a * (mu - odd * odd) / (Scalar(k) * Scalar(8) * x);
        if (std::abs(next) >= last) break;
        a = next;
        last = std::abs(a);
        switch (k % 4) {
            case 1: q += a; break;
            case 2: p -= a; break;
            case 3: q -= a; break;
            default: p += a; break;
        }
        if (last < std::numeric_limits<Scalar>::epsilon() * Scalar(1e-3)) break;
    }
    const Scalar chi = x - Scalar(0.75) * Scalar(3.14159265358979323846);
    return std::sqrt(Scalar(2) / (Scalar(3.14159265358979323846) * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

/// Bessel function of the first kind, order one.
template <typename Scalar>
Scalar bessel_j1(Scalar x) {
    const Scalar ax = std::abs(x);
    if (ax <= Scalar(15)) return x * detail::j1_over_x_series(x);
    const Scalar v = detail::j1_asymptotic(ax);
    return x < 0 ? -v : v;
}

/// J1(x)/x with the removable singularity filled in (value 1/2 at x = 0).
template <typename Scalar>
Scalar bessel_j1_over_x(Scalar x) {
    if (std::abs(x) <= Scalar(15)) return detail::j1_over_x_series(x);
    return bessel_j1(x) / x;
}

}  // namespace leo
