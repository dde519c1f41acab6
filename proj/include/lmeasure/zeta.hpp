#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace lmeasure {

/// A real value together with a certified absolute-error bound.
struct CertifiedValue {
    double value = 0.0;
    double bound = 0.0;
};

namespace detail {

// B_2 .. B_24
inline constexpr double kBernoulli[] = {
    1.0 / 6.0,        -1.0 / 30.0,        1.0 / 42.0,          -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0,    7.0 / 6.0,           -3617.0 / 510.0,
    43867.0 / 798.0,  -174611.0 / 330.0,  854513.0 / 138.0,    -236364091.0 / 2730.0,
};
inline constexpr int kEmTerms = 11;  // B_2 .. B_22 used; B_24 bounds the remainder

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace detail

/// Hurwitz zeta(s, x) = sum_{n>=0} (x+n)^{-s} for real s > 1, x > 0, by
/// Euler-Maclaurin. The remainder after the B_{2J} term is bounded by
/// |B_{2J+2}|/(2J+2)! * (s)_{2J+1} * (x+M)^{-s-2J-1}, since the periodic
/// Bernoulli functions satisfy |~B_{2k}(t)| <= |B_{2k}| and the integrated
/// derivative telescopes; this bound is returned as the certificate.
inline CertifiedValue hurwitz_zeta(double s, double x) {
    if (!(s > 1.0)) throw std::invalid_argument("hurwitz_zeta: requires s > 1");
    if (!(x > 0.0)) throw std::invalid_argument("hurwitz_zeta: requires x > 0");

    const double eps = std::numeric_limits<double>::epsilon();
    std::int64_t m = 16;
    for (int attempt = 0; attempt < 8; ++attempt, m *= 2) {
        // main sum with compensation
        double sum = 0.0, comp = 0.0;
        for (std::int64_t n = 0; n < m; ++n) {
            double term = std::pow(x + static_cast<double>(n), -s);
            double t = sum + term;
            comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        double xm = x + static_cast<double>(m);
        double total = sum + comp + std::pow(xm, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(xm, -s);

        // correction terms B_{2j}/(2j)! (s)_{2j-1} (x+M)^{-s-2j+1}
        double rising = s;                       // (s)_1
        double power = std::pow(xm, -s - 1.0);   // (x+M)^{-s-1}
        const double inv_xm2 = 1.0 / (xm * xm);
        for (int j = 1; j <= detail::kEmTerms; ++j) {
            total += detail::kBernoulli[j - 1] / detail::factorial(2 * j) * rising * power;
            rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
            power *= inv_xm2;
        }
        // remainder bound from the first omitted term; `rising` is now
        // (s)_{2J+1} and `power` is (x+M)^{-s-2J-1}
        double remainder = std::fabs(detail::kBernoulli[detail::kEmTerms]) /
                           detail::factorial(2 * detail::kEmTerms + 2) * rising * power;
        double target = 8.0 * eps * std::fabs(total);
        if (remainder <= target || attempt == 7) {
            double rounding = 8.0 * eps * (std::fabs(sum) + std::fabs(total));
            return {total, remainder + rounding};
        }
    }
    throw std::logic_error("hurwitz_zeta: unreachable");
}

inline CertifiedValue riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

}  // namespace lmeasure
