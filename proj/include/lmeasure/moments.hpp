#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lmeasure/char_group.hpp"
#include "lmeasure/lfunction.hpp"
#include "lmeasure/measures.hpp"
#include "lmeasure/zeta.hpp"

namespace lmeasure {

/// A mixed moment E[prod_j chi(m_j)^{k_j} conj(chi(m_j))^{l_j}].
struct MomentSpec {
    std::int64_t q = 0;
    std::vector<std::int64_t> bases;
    std::vector<int> k;
    std::vector<int> l;

    static MomentSpec single(std::int64_t q, std::int64_t m, int k, int l) {
        return MomentSpec{q, {m}, {k}, {l}};
    }

    void validate() const {
        if (bases.empty() || bases.size() != k.size() || bases.size() != l.size())
            throw std::invalid_argument("MomentSpec: bases/k/l must be nonempty and the same length");
        for (std::size_t j = 0; j < bases.size(); ++j) {
            if (bases[j] < 1) throw std::invalid_argument("MomentSpec: bases must be >= 1");
            if (k[j] < 0 || l[j] < 0) throw std::invalid_argument("MomentSpec: exponents must be >= 0");
        }
    }
};

enum class MomentMethod { brute_force, riemann, congruence_series, limit, modular };

inline const char* to_string(MomentMethod m) {
    switch (m) {
        case MomentMethod::brute_force: return "bruteforce";
        case MomentMethod::riemann: return "riemann";
        case MomentMethod::congruence_series: return "congruence-series";
        case MomentMethod::limit: return "limit";
        case MomentMethod::modular: return "modular";
    }
    return "?";
}

struct MomentResult {
    std::complex<double> value{0.0, 0.0};
    MomentMethod method = MomentMethod::brute_force;
    double error_budget = 0.0;
};

/// Weighted character sum sum_chi w(chi) prod_j chi(m_j)^{k_j}
/// conj(chi(m_j))^{l_j}; the per-character factor is assembled in exact
/// root-of-unity arithmetic before the single complex conversion.
inline MomentResult exact_moment(const CharacterMeasure& measure, const MomentSpec& spec) {
    spec.validate();
    if (spec.q != measure.q()) throw std::invalid_argument("exact_moment: spec modulus mismatch");
    const auto& table = *measure.table;
    const std::int64_t phi = table.size();
    detail::NeumaierSum re, im;
    for (std::int64_t i = 0; i < phi; ++i) {
        RootOfUnity factor = RootOfUnity::one();
        bool zero = false;
        for (std::size_t j = 0; j < spec.bases.size() && !zero; ++j) {
            int net = spec.k[j] - spec.l[j];
            RootOfUnity v = table.character(i)(spec.bases[j]);
            if (v.is_null()) {
                if (spec.k[j] != 0 || spec.l[j] != 0) zero = true;
            } else {
                factor = factor * v.pow(net);
            }
        }
        if (zero) continue;
        auto c = table.to_complex(factor);
        double w = measure.weights[static_cast<std::size_t>(i)];
        re.add(w * c.real());
        im.add(w * c.imag());
    }
    MomentResult out;
    out.value = {re.total(), im.total()};
    out.method = MomentMethod::brute_force;
    out.error_budget = 2.0 * static_cast<double>(phi) * measure.weight_error / measure.partition_function +
                       4e-16 * static_cast<double>(phi);
    return out;
}

/// Riemann-sum machinery at one (s, q): Li_s on the q-th roots of unity and
/// its restriction g to the q-coprime frequencies
/// g(a/q) = sum_{gcd(n,q)=1} e(n a/q) n^{-s}
///        = sum_{d | q squarefree} mu(d) d^{-s} Li_s(e(d a / q)).
/// The ratio of mu_q-inner products of dilated g grids reproduces the
/// character-measure moments exactly; the undilated Li grids give the
/// unrestricted inner products whose sandwich bounds drive the convergence
/// certificates.
class RiemannMomentTable {
  public:
    RiemannMomentTable(double s, std::int64_t q) : s_(s), q_(q), li_(polylog_root_table(s, q)) {
        g_.resize(static_cast<std::size_t>(q));
        double moebius_weight = 0.0;
        for (const auto& [d, mu] : squarefree_divisors(q)) {
            double w = static_cast<double>(mu) * std::pow(static_cast<double>(d), -s);
            moebius_weight += std::fabs(w);
            for (std::int64_t a = 0; a < q; ++a)
                g_[static_cast<std::size_t>(a)] +=
                    w * li_.values[static_cast<std::size_t>(d % q * a % q)];
        }
        g_entry_bound_ = li_.entry_bound * moebius_weight;
        for (const auto& v : g_) g_max_ = std::max(g_max_, std::abs(v));
        li_max_ = 0.0;
        for (const auto& v : li_.values) li_max_ = std::max(li_max_, std::abs(v));

        auto den = inner_product_grid(g_, 1, 1);
        den_ = den.real();
        den_bound_ = grid_bound(g_max_, g_entry_bound_) + std::fabs(den.imag());
    }

    double s() const { return s_; }
    std::int64_t q() const { return q_; }
    const PolylogRootTable& root_table() const { return li_; }

    /// E_{s,q}[chi_m^k conj(chi_m)^l] via the mu_q Riemann sum of the
    /// coprime-frequency grids. When gcd(m, q) > 1 the evaluations vanish
    /// identically and the moment is 1{k = l = 0}.
    MomentResult moment(std::int64_t m, int k, int l) const {
        MomentResult out;
        out.method = MomentMethod::riemann;
        if (m < 1 || k < 0 || l < 0) throw std::invalid_argument("riemann moment: bad spec");
        if (std::gcd(m, q_) > 1) {
            // chi(m) = 0 identically, so the moment is 1{k = l = 0}
            out.value = (k == 0 && l == 0) ? 1.0 : 0.0;
            return out;
        }
        std::int64_t a = mod_pow(m, k, q_);
        std::int64_t b = mod_pow(m, l, q_);
        auto num = inner_product_grid(g_, a, b);
        double num_bound = grid_bound(g_max_, g_entry_bound_) + std::fabs(num.imag());
        out.value = num.real() / den_;
        out.error_budget =
            (num_bound + std::abs(out.value) * den_bound_) / (den_ - den_bound_);
        return out;
    }

    /// Unrestricted inner product <D_m^k f_s, D_m^l f_s>_{L^2(mu_q)} =
    /// (1/q) sum_j Li_s(e(m^k j/q)) conj(Li_s(e(m^l j/q))).
    CertifiedValue dilation_inner_product(std::int64_t m, int k, int l) const {
        std::int64_t a = mod_pow(m, k, q_);
        std::int64_t b = mod_pow(m, l, q_);
        auto v = inner_product_grid(li_.values, a, b);
        double bound = grid_bound(li_max_, li_.entry_bound) + std::fabs(v.imag());
        return {v.real() / static_cast<double>(q_), bound / static_cast<double>(q_)};
    }

  private:
    std::complex<double> inner_product_grid(const std::vector<std::complex<double>>& grid,
                                            std::int64_t a, std::int64_t b) const {
        std::complex<double> acc{0.0, 0.0};
        std::int64_t ia = 0, ib = 0;
        for (std::int64_t j = 0; j < q_; ++j) {
            acc += grid[static_cast<std::size_t>(ia)] * std::conj(grid[static_cast<std::size_t>(ib)]);
            ia += a;
            if (ia >= q_) ia -= q_;
            ib += b;
            if (ib >= q_) ib -= q_;
        }
        return acc;
    }

    double grid_bound(double grid_max, double entry_bound) const {
        double per_term = 2.0 * grid_max * entry_bound + entry_bound * entry_bound;
        double rounding = 4e-16 * static_cast<double>(q_) * grid_max * grid_max;
        return static_cast<double>(q_) * per_term + rounding;
    }

    double s_;
    std::int64_t q_;
    PolylogRootTable li_;
    std::vector<std::complex<double>> g_;
    double g_entry_bound_ = 0.0;
    double g_max_ = 0.0;
    double li_max_ = 0.0;
    double den_ = 0.0;
    double den_bound_ = 0.0;
};

inline MomentResult riemann_moment(double s, std::int64_t q, std::int64_t m, int k, int l) {
    return RiemannMomentTable(s, q).moment(m, k, l);
}

inline CertifiedValue dilation_inner_product(double s, std::int64_t q, std::int64_t m, int k, int l) {
    return RiemannMomentTable(s, q).dilation_inner_product(m, k, l);
}

/// Truncated congruence double sum
///   sum_{n1, n2 <= N, gcd(n1 n2, q) = 1, n1 m^k = n2 m^l mod q} (n1 n2)^{-s}
/// normalized by the k = l = 0 sum, with the tail certificate
/// (sum_{n>N} n^{-s})^2 + 2 zeta(s) sum_{n>N} n^{-s} on each of the two sums.
/// Buckets by residue class so the double sum costs O(N + q).
inline MomentResult congruence_series_moment(double s, std::int64_t q, std::int64_t m, int k, int l,
                                             std::int64_t n_max) {
    if (!(s > 1.0)) throw std::invalid_argument("congruence_series_moment: requires s > 1");
    if (q < 1 || m < 1 || k < 0 || l < 0 || n_max < q)
        throw std::invalid_argument("congruence_series_moment: bad arguments");
    MomentResult out;
    out.method = MomentMethod::congruence_series;
    std::int64_t g = std::gcd(m, q);
    if (g > 1 && (k > 0 || l > 0)) {
        // chi(m) = 0 for every character, so the moment is 1{k = l = 0}
        out.value = 0.0;
        return out;
    }
    std::vector<char> coprime(static_cast<std::size_t>(q), 0);
    for (std::int64_t c = 0; c < q; ++c) coprime[static_cast<std::size_t>(c)] = std::gcd(c == 0 ? q : c, q) == 1;
    if (q == 1) coprime[0] = 1;

    std::vector<double> bucket(static_cast<std::size_t>(q), 0.0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        std::size_t c = static_cast<std::size_t>(n % q);
        if (!coprime[c]) continue;
        bucket[c] += std::pow(static_cast<double>(n), -s);
    }

    std::int64_t a = mod_pow(m, k, q);
    std::int64_t b = mod_pow(m, l, q);
    std::int64_t shift = mod_mul(a, mod_inverse(b, q == 1 ? 1 : q), q);  // n2 = shift * n1 mod q
    double num = 0.0, den = 0.0;
    for (std::int64_t c = 0; c < q; ++c) {
        if (!coprime[static_cast<std::size_t>(c)]) continue;
        double sc = bucket[static_cast<std::size_t>(c)];
        den += sc * sc;
        num += sc * bucket[static_cast<std::size_t>(mod_mul(shift, c, q))];
    }
    double zs = riemann_zeta(s).value;
    double tail = std::pow(static_cast<double>(n_max), 1.0 - s) / (s - 1.0);
    double sum_bound = tail * tail + 2.0 * zs * tail + 4e-16 * zs * zs * static_cast<double>(q);
    out.value = num / den;
    out.error_budget = (sum_bound + std::abs(out.value) * sum_bound) / (den - sum_bound);
    return out;
}

/// The q -> infinity limit prod_j m_j^{-s |k_j - l_j|}; equals the mixed
/// circular moment of independent wrapped-Cauchy evaluations. Multi-base
/// specs require distinct prime bases.
inline MomentResult limit_moment(double s, const std::vector<std::int64_t>& bases,
                                 const std::vector<int>& k, const std::vector<int>& l) {
    if (!(s > 1.0)) throw std::invalid_argument("limit_moment: requires s > 1");
    if (bases.empty() || bases.size() != k.size() || bases.size() != l.size())
        throw std::invalid_argument("limit_moment: bases/k/l must be nonempty and the same length");
    if (bases.size() > 1) {
        for (std::size_t i = 0; i < bases.size(); ++i) {
            if (!is_prime(bases[i]))
                throw std::invalid_argument("limit_moment: joint bases must be prime");
            for (std::size_t j = i + 1; j < bases.size(); ++j)
                if (bases[i] == bases[j])
                    throw std::invalid_argument("limit_moment: joint bases must be distinct");
        }
    }
    double log_value = 0.0;
    for (std::size_t j = 0; j < bases.size(); ++j) {
        if (bases[j] < 1) throw std::invalid_argument("limit_moment: bases must be >= 1");
        log_value -= s * std::abs(k[j] - l[j]) * std::log(static_cast<double>(bases[j]));
    }
    MomentResult out;
    out.value = std::exp(log_value);
    out.method = MomentMethod::limit;
    return out;
}

inline MomentResult limit_moment(double s, std::int64_t m, int k, int l) {
    return limit_moment(s, std::vector<std::int64_t>{m}, {k}, {l});
}

/// Rigorous bound B with |riemann_moment - limit_moment| <= B, combining the
/// two one-sided sandwich inequalities: the numerator deviates from
/// zeta(2s)/m^{s|k-l|} by at most a = (m^{sk} + m^{sl}) zeta(s)^2 / q^s and
/// the denominator from zeta(2s) by at most b = 2 zeta(s)^2 / q^s, both
/// upward, whence B = (a + L b)/zeta(2s) with L = m^{-s|k-l|}.
inline double error_bound(double s, std::int64_t q, std::int64_t m, int k, int l) {
    if (!(s > 1.0)) throw std::invalid_argument("error_bound: requires s > 1");
    double zs = riemann_zeta(s).value;
    double z2s = riemann_zeta(2.0 * s).value;
    double qs = std::pow(static_cast<double>(q), -s);
    double a = (std::pow(static_cast<double>(m), s * k) + std::pow(static_cast<double>(m), s * l)) *
               zs * zs * qs;
    double b = 2.0 * zs * zs * qs;
    double big_l = std::pow(static_cast<double>(m), -s * std::abs(k - l));
    return (a + big_l * b) / z2s;
}

/// zeta_q(s) = <f_s, f_s>_{L^2(mu_q)} = zeta(2s) + 2 sum_{r,n >= 1}
/// (n(n+rq))^{-s}. The r-sum collapses to a Hurwitz zeta per n:
/// sum_r (n+rq)^{-s} = q^{-s} zeta(s, 1 + n/q); the n-sum is truncated at
/// n_max with the certificate 2 N^{2-2s} / (q (s-1)(2s-2)).
inline CertifiedValue zeta_q(double s, std::int64_t q, std::int64_t n_max) {
    if (!(s > 1.0)) throw std::invalid_argument("zeta_q: requires s > 1");
    if (q < 1 || n_max < 1) throw std::invalid_argument("zeta_q: bad arguments");
    auto z2s = riemann_zeta(2.0 * s);
    double qs = std::pow(static_cast<double>(q), -s);
    detail::NeumaierSum acc;
    double hurwitz_bounds = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        auto h = hurwitz_zeta(s, 1.0 + static_cast<double>(n) / static_cast<double>(q));
        double p = std::pow(static_cast<double>(n), -s);
        acc.add(p * h.value);
        hurwitz_bounds += p * h.bound;
    }
    double lattice = 2.0 * qs * acc.total();
    double tail = 2.0 * std::pow(static_cast<double>(n_max), 2.0 - 2.0 * s) /
                  (static_cast<double>(q) * (s - 1.0) * (2.0 * s - 2.0));
    return {z2s.value + lattice,
            z2s.bound + tail + 2.0 * qs * hurwitz_bounds + 1e-14 * (1.0 + lattice)};
}

/// Exact uniform-measure moment: 1 iff m^k = m^l mod q (assuming
/// gcd(m, q) = 1), by modular exponentiation.
inline MomentResult uniform_moment(std::int64_t q, std::int64_t m, int k, int l) {
    if (q < 1 || m < 1 || k < 0 || l < 0) throw std::invalid_argument("uniform_moment: bad arguments");
    MomentResult out;
    out.method = MomentMethod::modular;
    out.value = mod_pow(m, k, q) == mod_pow(m, l, q) ? 1.0 : 0.0;
    return out;
}

inline MomentResult uniform_moment_joint(std::int64_t q, const std::vector<std::int64_t>& bases,
                                         const std::vector<int>& k, const std::vector<int>& l) {
    if (bases.empty() || bases.size() != k.size() || bases.size() != l.size())
        throw std::invalid_argument("uniform_moment_joint: bases/k/l must be the same length");
    std::int64_t lhs = 1, rhs = 1;
    for (std::size_t j = 0; j < bases.size(); ++j) {
        lhs = mod_mul(lhs, mod_pow(bases[j], k[j], q), q);
        rhs = mod_mul(rhs, mod_pow(bases[j], l[j], q), q);
    }
    MomentResult out;
    out.method = MomentMethod::modular;
    out.value = lhs == rhs ? 1.0 : 0.0;
    return out;
}

}  // namespace lmeasure
