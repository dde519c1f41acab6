#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lmeasure/char_group.hpp"
#include "lmeasure/primes.hpp"
#include "lmeasure/zeta.hpp"

namespace lmeasure {

/// Controls truncation of infinite sums/products: `tol` is the target
/// absolute error, `n_max` the hard cap on the summation (or prime cutoff)
/// length.
struct TruncationPolicy {
    double tol = 1e-10;
    std::int64_t n_max = 100'000'000;
};

/// A complex value with a certified absolute truncation bound. When the
/// requested tolerance would need more terms than the cap, `cap_exceeded` is
/// set and `bound` reports the certificate actually achieved.
struct ValueWithCert {
    std::complex<double> value{0.0, 0.0};
    double bound = 0.0;
    std::int64_t terms_used = 0;
    bool cap_exceeded = false;
};

namespace detail {

struct NeumaierSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double t = s + x;
        c += (std::fabs(s) >= std::fabs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    double total() const { return s + c; }
};

// terms needed so that N^{1-s}/(s-1) <= tol; clamped to [8, cap]
inline std::int64_t series_length(double s, double tol, std::int64_t cap, bool& capped) {
    double lg = -std::log((s - 1.0) * tol) / (s - 1.0);
    capped = false;
    if (lg > std::log(static_cast<double>(cap))) {
        capped = true;
        return cap;
    }
    std::int64_t n = static_cast<std::int64_t>(std::ceil(std::exp(lg)));
    return std::max<std::int64_t>(n, 8);
}

}  // namespace detail

/// Li_s(e^{2 pi i theta}) by direct summation of the defining series, with
/// the integral-comparison tail certificate N^{1-s}/(s-1). zeta(s) is the
/// theta = 0 case.
inline ValueWithCert polylog(double s, double theta, TruncationPolicy policy = {}) {
    if (!(s > 1.0)) throw std::invalid_argument("polylog: requires s > 1");
    bool capped = false;
    std::int64_t n_terms = detail::series_length(s, policy.tol, policy.n_max, capped);

    const std::complex<double> step{std::cos(2.0 * M_PI * theta), std::sin(2.0 * M_PI * theta)};
    std::complex<double> w{1.0, 0.0};
    detail::NeumaierSum re, im;
    for (std::int64_t n = 1; n <= n_terms; ++n) {
        w *= step;
        if ((n & 1023) == 0) w /= std::abs(w);
        double p = std::pow(static_cast<double>(n), -s);
        re.add(w.real() * p);
        im.add(w.imag() * p);
    }
    ValueWithCert out;
    out.value = {re.total(), im.total()};
    out.terms_used = n_terms;
    out.cap_exceeded = capped;
    out.bound = std::pow(static_cast<double>(n_terms), 1.0 - s) / (s - 1.0) + 1e-13 * (1.0 + std::abs(out.value));
    return out;
}

/// Residue-class sums T_c = q^{-s} zeta(s, c/q) = sum_{n = c mod q} n^{-s}
/// for c = 1..q, each with a certificate; shared by the L-value and
/// root-of-unity polylog evaluations at modulus q.
struct ResidueZetaTable {
    double s = 0.0;
    std::int64_t q = 0;
    std::vector<double> t;  // t[c-1], c = 1..q
    double bound_each = 0.0;
    double bound_sum = 0.0;  // sum of per-entry certificates
};

inline ResidueZetaTable make_residue_zeta_table(double s, std::int64_t q) {
    if (!(s > 1.0)) throw std::invalid_argument("make_residue_zeta_table: requires s > 1");
    if (q < 1) throw std::invalid_argument("make_residue_zeta_table: requires q >= 1");
    ResidueZetaTable tab;
    tab.s = s;
    tab.q = q;
    tab.t.resize(static_cast<std::size_t>(q));
    double qs = std::pow(static_cast<double>(q), -s);
    for (std::int64_t c = 1; c <= q; ++c) {
        auto h = hurwitz_zeta(s, static_cast<double>(c) / static_cast<double>(q));
        tab.t[static_cast<std::size_t>(c - 1)] = qs * h.value;
        tab.bound_each = std::max(tab.bound_each, qs * h.bound);
        tab.bound_sum += qs * h.bound;
    }
    return tab;
}

/// Li_s at all q-th roots of unity: values[a] = Li_s(e^{2 pi i a/q}),
/// assembled from the residue-class sums by a length-q Fourier pass.
struct PolylogRootTable {
    double s = 0.0;
    std::int64_t q = 0;
    std::vector<std::complex<double>> values;
    double entry_bound = 0.0;  // certified absolute error of each entry
};

inline PolylogRootTable polylog_root_table(const ResidueZetaTable& rz) {
    PolylogRootTable tab;
    tab.s = rz.s;
    tab.q = rz.q;
    const std::int64_t q = rz.q;
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(q));
    for (std::int64_t r = 0; r < q; ++r) {
        double a = 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(q);
        roots[static_cast<std::size_t>(r)] = {std::cos(a), std::sin(a)};
    }
    tab.values.resize(static_cast<std::size_t>(q));
    double abs_sum = 0.0;
    for (std::int64_t c = 1; c <= q; ++c) abs_sum += std::fabs(rz.t[static_cast<std::size_t>(c - 1)]);
    for (std::int64_t a = 0; a < q; ++a) {
        std::complex<double> acc{0.0, 0.0};
        std::int64_t idx = a % q;  // walks a*c mod q as c increments
        for (std::int64_t c = 1; c <= q; ++c) {
            acc += roots[static_cast<std::size_t>(idx)] * rz.t[static_cast<std::size_t>(c - 1)];
            idx += a;
            if (idx >= q) idx -= q;
        }
        tab.values[static_cast<std::size_t>(a)] = acc;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    tab.entry_bound = rz.bound_sum + 2.0 * eps * static_cast<double>(q) * abs_sum;
    return tab;
}

inline PolylogRootTable polylog_root_table(double s, std::int64_t q) {
    return polylog_root_table(make_residue_zeta_table(s, q));
}

enum class LMode {
    residue_class,  // exact regrouping of the series by residue classes mod q
    direct_series,  // term-by-term summation, tail bound N^{1-s}/(s-1)
    euler_product,  // product over primes p <= cutoff, p not dividing q
};

/// L_s(chi) = sum_n chi(n) n^{-s}. The residue_class mode (default) sums the
/// same series as q^{-s} sum_c chi(c) zeta(s, c/q) and reaches near machine
/// precision; the other two modes follow their textbook truncations and are
/// retained as independent cross-checks.
inline ValueWithCert l_value(double s, const Character& chi, const CharacterTable& table,
                             TruncationPolicy policy = {}, LMode mode = LMode::residue_class) {
    if (!(s > 1.0)) throw std::invalid_argument("l_value: requires s > 1");
    const std::int64_t q = chi.q();
    ValueWithCert out;

    switch (mode) {
        case LMode::residue_class: {
            auto rz = make_residue_zeta_table(s, q);
            std::complex<double> acc{0.0, 0.0};
            for (std::int64_t c = 1; c <= q; ++c) {
                auto v = chi(c);
                if (v.is_null()) continue;
                acc += table.to_complex(v) * rz.t[static_cast<std::size_t>(c - 1)];
            }
            out.value = acc;
            out.terms_used = q;
            out.bound = rz.bound_sum + 2e-16 * static_cast<double>(q) * std::abs(acc) + 1e-15;
            return out;
        }
        case LMode::direct_series: {
            bool capped = false;
            std::int64_t n_terms = detail::series_length(s, policy.tol, policy.n_max, capped);
            detail::NeumaierSum re, im;
            for (std::int64_t n = 1; n <= n_terms; ++n) {
                auto v = chi(n);
                if (v.is_null()) continue;
                double p = std::pow(static_cast<double>(n), -s);
                auto c = table.to_complex(v);
                re.add(c.real() * p);
                im.add(c.imag() * p);
            }
            out.value = {re.total(), im.total()};
            out.terms_used = n_terms;
            out.cap_exceeded = capped;
            out.bound = std::pow(static_cast<double>(n_terms), 1.0 - s) / (s - 1.0) +
                        1e-13 * (1.0 + std::abs(out.value));
            return out;
        }
        case LMode::euler_product: {
            // prime cutoff from the same tolerance rule; the omitted factors
            // multiply the value by at most exp(T) with
            // T = P^{1-s} / ((s-1)(1 - 2^{-s})).
            bool capped = false;
            std::int64_t p_cut = detail::series_length(s, policy.tol, policy.n_max, capped);
            auto primes = primes_up_to(p_cut);
            std::complex<double> acc{1.0, 0.0};
            std::int64_t used = 0;
            for (std::int64_t p : primes) {
                if (q % p == 0) continue;
                auto v = chi(p);
                acc /= (1.0 - table.to_complex(v) * std::pow(static_cast<double>(p), -s));
                ++used;
            }
            double tail = std::pow(static_cast<double>(p_cut), 1.0 - s) /
                          ((s - 1.0) * (1.0 - std::pow(2.0, -s)));
            out.value = acc;
            out.terms_used = used;
            out.cap_exceeded = capped;
            out.bound = std::abs(acc) * std::expm1(tail) + 1e-13 * (1.0 + std::abs(acc));
            return out;
        }
    }
    throw std::logic_error("l_value: unknown mode");
}

/// Confinement potential H_s(chi) = sum_{p <= p_max, p not | q}
/// log|1 - p^{-s} chi(p)|; exp(-2 H) converges to |L_s(chi)|^2 as p_max
/// grows.
inline double potential(double s, const Character& chi, const CharacterTable& table, std::int64_t p_max) {
    if (!(s > 1.0)) throw std::invalid_argument("potential: requires s > 1");
    double h = 0.0;
    for (std::int64_t p : primes_up_to(p_max)) {
        if (chi.q() % p == 0) continue;
        std::complex<double> f = 1.0 - table.to_complex(chi(p)) * std::pow(static_cast<double>(p), -s);
        h += 0.5 * std::log(std::norm(f));
    }
    return h;
}

/// Multiplicative Euler coefficients a_p in (0,1): finitely many overrides,
/// optionally completed by the default a_p = p^{-s} for the remaining primes
/// up to the product cutoff.
struct EulerCoefficients {
    std::map<std::int64_t, double> overrides;
    std::optional<double> default_exponent;  // a_p = p^{-default_exponent}
    std::int64_t p_max = 100'000;

    double at(std::int64_t p) const {
        auto it = overrides.find(p);
        if (it != overrides.end()) return it->second;
        if (default_exponent) return std::pow(static_cast<double>(p), -*default_exponent);
        return 0.0;  // outside the support
    }

    void validate() const {
        for (const auto& [p, a] : overrides) {
            if (!is_prime(p)) throw std::invalid_argument("EulerCoefficients: keys must be prime");
            if (!(a > 0.0 && a < 1.0)) throw std::domain_error("EulerCoefficients: requires 0 < a_p < 1");
        }
        if (default_exponent && !(*default_exponent > 1.0))
            throw std::domain_error("EulerCoefficients: default exponent must exceed 1");
        if (p_max < 0) throw std::invalid_argument("EulerCoefficients: negative cutoff");
    }
};

/// L_a(chi) = prod_{p not | q} (1 - a_p chi(p))^{-1} over the support of a,
/// which equals the Dirichlet series sum_n chi(n) prod_p a_p^{v_p(n)}.
inline ValueWithCert l_a_value(const EulerCoefficients& coeffs, const Character& chi,
                               const CharacterTable& table) {
    coeffs.validate();
    const std::int64_t q = chi.q();
    std::complex<double> acc{1.0, 0.0};
    std::int64_t used = 0;
    if (coeffs.default_exponent) {
        for (std::int64_t p : primes_up_to(coeffs.p_max)) {
            if (q % p == 0) continue;
            double a = coeffs.at(p);
            if (!(a > 0.0 && a < 1.0)) throw std::domain_error("l_a_value: divergent coefficient");
            acc /= (1.0 - table.to_complex(chi(p)) * a);
            ++used;
        }
    } else {
        for (const auto& [p, a] : coeffs.overrides) {
            if (q % p == 0) continue;
            acc /= (1.0 - table.to_complex(chi(p)) * a);
            ++used;
        }
    }
    ValueWithCert out;
    out.value = acc;
    out.terms_used = used;
    if (coeffs.default_exponent && coeffs.p_max >= 2) {
        double s = *coeffs.default_exponent;
        double tail = std::pow(static_cast<double>(coeffs.p_max), 1.0 - s) /
                      ((s - 1.0) * (1.0 - std::pow(2.0, -s)));
        out.bound = std::abs(acc) * std::expm1(tail);
    }
    out.bound += 1e-13 * (1.0 + std::abs(acc));
    return out;
}

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                               double fm, double fb, double tol, int depth, std::int64_t& budget) {
    if (budget <= 0) throw std::runtime_error("quadrature did not converge within the node budget");
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    budget -= 2;
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 40) throw std::runtime_error("quadrature recursion too deep");
    if (std::fabs(left + right - whole) <= 15.0 * tol && depth > 3)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth + 1, budget) +
           adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth + 1, budget);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                        std::int64_t& budget) {
    double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    budget -= 3;
    return adaptive_simpson(f, a, b, fa, fm, fb, tol, 0, budget);
}

}  // namespace detail

/// Evaluates (1/Gamma(s)) int_0^inf z e^{-t}/(1 - z e^{-t}) t^{s-1} dt with
/// z = e^{2 pi i theta} by adaptive quadrature and returns the absolute
/// difference from the series value of Li_s(z). Throws when the node budget
/// is exhausted before convergence.
inline double polylog_integral_check(double s, double theta, std::int64_t quadrature_nodes,
                                     TruncationPolicy series_policy = {1e-7, 20'000'000}) {
    if (!(s > 1.0)) throw std::invalid_argument("polylog_integral_check: requires s > 1");
    double frac = theta - std::floor(theta);
    if (frac == 0.0) throw std::invalid_argument("polylog_integral_check: theta must not be an integer");

    const std::complex<double> z{std::cos(2.0 * M_PI * theta), std::sin(2.0 * M_PI * theta)};
    auto integrand = [&](double t, bool real_part) {
        double e = std::exp(-t);
        std::complex<double> v = z * e / (1.0 - z * e) * std::pow(t, s - 1.0);
        return real_part ? v.real() : v.imag();
    };

    double t_cut = 48.0 + 4.0 * s;
    double integral_re = 0.0, integral_im = 0.0;
    std::int64_t budget = quadrature_nodes;
    for (bool real_part : {true, false}) {
        auto part = [&](double t) { return integrand(t, real_part); };
        // substitute t = u^2 on [0,1] so the t^{s-1} endpoint is smooth
        auto lower = [&](double u) { return 2.0 * u * part(u * u); };
        double v = detail::integrate(lower, 0.0, 1.0, 1e-10, budget);
        v += detail::integrate(part, 1.0, t_cut, 1e-10, budget);
        (real_part ? integral_re : integral_im) = v;
    }
    std::complex<double> integral{integral_re, integral_im};
    integral /= std::tgamma(s);

    auto series = polylog(s, frac, series_policy);
    return std::abs(integral - series.value);
}

}  // namespace lmeasure
