#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lmeasure/primes.hpp"
#include "lmeasure/root_of_unity.hpp"

namespace lmeasure {

/// Structure of (Z/qZ)^x: one cyclic factor per generator, with discrete
/// logarithms precomputed by brute-force generator powering. For the factor
/// 2^e, e >= 3, the generators are (-1 mod 2^e, 5) of orders (2, 2^{e-2});
/// odd prime powers contribute a single primitive root.
struct UnitGroupStructure {
    std::int64_t q = 1;
    std::vector<PrimePower> factors;
    std::vector<std::int64_t> generators;  // residues mod q, CRT-lifted
    std::vector<std::int64_t> orders;      // orders[i] = order of generators[i]
    std::int64_t phi = 1;                  // product of orders = totient(q)
    std::int64_t angle_denominator = 1;    // lcm of orders, divides phi

    // residue -> mixed-radix rank of its exponent vector (-1 off the units),
    // most significant digit first; rank order = lexicographic order on
    // exponent vectors.
    std::vector<std::int32_t> dlog_rank;
    std::vector<std::int64_t> residue_of_rank;

    void digits_of_rank(std::int64_t rank, std::vector<std::int64_t>& out) const {
        out.assign(orders.size(), 0);
        for (std::size_t i = orders.size(); i-- > 0;) {
            out[i] = rank % orders[i];
            rank /= orders[i];
        }
    }

    std::int64_t rank_of_digits(const std::vector<std::int64_t>& digits) const {
        std::int64_t rank = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) rank = rank * orders[i] + digits[i];
        return rank;
    }
};

class CharacterTable;

/// One Dirichlet character mod q, identified by its exponents on the group
/// generators: chi(g_i) = e^{2 pi i exps_i / orders_i}.
class Character {
  public:
    Character() = default;
    Character(std::shared_ptr<const UnitGroupStructure> st, std::vector<std::int64_t> exps, std::int64_t index)
        : structure_(std::move(st)), exps_(std::move(exps)), index_(index) {}

    std::int64_t q() const { return structure_->q; }
    std::int64_t index() const { return index_; }
    const std::vector<std::int64_t>& exps() const { return exps_; }
    const UnitGroupStructure& structure() const { return *structure_; }
    std::shared_ptr<const UnitGroupStructure> structure_ptr() const { return structure_; }
    bool is_principal() const { return index_ == 0; }

    /// Angle numerator of chi(n) over structure().angle_denominator, or -1
    /// when chi(n) = 0. Unreduced; the fast path for summation loops.
    std::int64_t scaled_angle(std::int64_t n) const {
        const auto& st = *structure_;
        std::int64_t r = n % st.q;
        if (r < 0) r += st.q;
        std::int32_t rank = st.dlog_rank[static_cast<std::size_t>(r)];
        if (rank < 0) return -1;
        const std::int64_t d = st.angle_denominator;
        std::int64_t t = 0;
        std::int64_t rem = rank;
        for (std::size_t i = st.orders.size(); i-- > 0;) {
            std::int64_t digit = rem % st.orders[i];
            rem /= st.orders[i];
            __int128 contrib = static_cast<__int128>(exps_[i]) * digit % d * (d / st.orders[i]);
            t = static_cast<std::int64_t>((t + contrib) % d);
        }
        return t;
    }

    /// chi(n): zero off the units, otherwise the exact root of unity
    /// e^{2 pi i sum_i exps_i dlog(n)_i / orders_i}.
    RootOfUnity operator()(std::int64_t n) const {
        std::int64_t t = scaled_angle(n);
        if (t < 0) return RootOfUnity::null();
        return RootOfUnity::from_fraction(t, structure_->angle_denominator);
    }

    Character conjugate() const {
        std::vector<std::int64_t> e(exps_.size());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = exps_[i] == 0 ? 0 : structure_->orders[i] - exps_[i];
        return Character(structure_, e, structure_->rank_of_digits(e));
    }

  private:
    std::shared_ptr<const UnitGroupStructure> structure_;
    std::vector<std::int64_t> exps_;
    std::int64_t index_ = 0;
};

inline RootOfUnity evaluate(const Character& chi, std::int64_t n) { return chi(n); }
inline Character conjugate(const Character& chi) { return chi.conjugate(); }

/// The full dual group of (Z/qZ)^x, enumerated in lexicographic order of the
/// exponent vectors; the principal character sits at index 0. Immutable after
/// construction and safe to share across threads.
class CharacterTable {
  public:
    explicit CharacterTable(std::shared_ptr<const UnitGroupStructure> st) : structure_(std::move(st)) {
        const auto& s = *structure_;
        chars_.reserve(static_cast<std::size_t>(s.phi));
        std::vector<std::int64_t> digits;
        for (std::int64_t rank = 0; rank < s.phi; ++rank) {
            s.digits_of_rank(rank, digits);
            chars_.emplace_back(structure_, digits, rank);
        }
        unit_roots_.resize(static_cast<std::size_t>(s.angle_denominator));
        for (std::int64_t t = 0; t < s.angle_denominator; ++t) {
            double a = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(s.angle_denominator);
            unit_roots_[static_cast<std::size_t>(t)] = {std::cos(a), std::sin(a)};
        }
    }

    std::int64_t q() const { return structure_->q; }
    std::int64_t size() const { return structure_->phi; }
    std::int64_t principal_index() const { return 0; }
    const Character& character(std::int64_t i) const { return chars_[static_cast<std::size_t>(i)]; }
    const std::vector<Character>& characters() const { return chars_; }
    const UnitGroupStructure& structure() const { return *structure_; }
    std::shared_ptr<const UnitGroupStructure> structure_ptr() const { return structure_; }

    std::int64_t conjugate_index(std::int64_t i) const {
        const auto& e = chars_[static_cast<std::size_t>(i)].exps();
        std::vector<std::int64_t> c(e.size());
        for (std::size_t j = 0; j < e.size(); ++j) c[j] = e[j] == 0 ? 0 : structure_->orders[j] - e[j];
        return structure_->rank_of_digits(c);
    }

    /// Precomputed e^{2 pi i t / angle_denominator}; avoids per-evaluation
    /// trigonometry in the summation loops.
    std::complex<double> to_complex(const RootOfUnity& r) const {
        if (r.is_null()) return {0.0, 0.0};
        std::int64_t d = structure_->angle_denominator;
        return unit_roots_[static_cast<std::size_t>(r.angle_numerator() * (d / r.angle_denominator()))];
    }

    std::complex<double> evaluate_c(std::int64_t char_index, std::int64_t n) const {
        std::int64_t t = chars_[static_cast<std::size_t>(char_index)].scaled_angle(n);
        if (t < 0) return {0.0, 0.0};
        return unit_roots_[static_cast<std::size_t>(t)];
    }

  private:
    std::shared_ptr<const UnitGroupStructure> structure_;
    std::vector<Character> chars_;
    std::vector<std::complex<double>> unit_roots_;
};

/// Visits every unit residue together with the scaled angle of the character
/// given by `exps` there, in group enumeration (rank) order. The angle is
/// maintained incrementally: wrapping a digit changes it by the same step as
/// incrementing it, because orders_i * step_i = 0 mod angle_denominator.
template <typename Visit>
inline void for_each_character_value(const UnitGroupStructure& st, const std::vector<std::int64_t>& exps,
                                     Visit&& visit) {
    const std::int64_t d = st.angle_denominator;
    const std::size_t n_gen = st.orders.size();
    std::vector<std::int64_t> step(n_gen);
    for (std::size_t i = 0; i < n_gen; ++i)
        step[i] = static_cast<std::int64_t>(static_cast<__int128>(exps[i] % d) * (d / st.orders[i]) % d);
    std::vector<std::int64_t> digits(n_gen, 0);
    std::int64_t t = 0;
    for (std::int64_t rank = 0; rank < st.phi; ++rank) {
        visit(rank, st.residue_of_rank[static_cast<std::size_t>(rank)], t);
        if (rank + 1 == st.phi) break;
        std::size_t i = n_gen;
        while (true) {
            --i;
            t += step[i];
            if (t >= d) t -= d;
            if (++digits[i] < st.orders[i]) break;
            digits[i] = 0;
        }
    }
}

namespace detail {

inline std::int64_t find_primitive_root(std::int64_t p, std::int64_t pe) {
    // primitive root mod p, promoted to p^e when needed
    std::int64_t m = p - 1;
    auto mf = factorize(m);
    std::int64_t g = 0;
    for (std::int64_t cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (const auto& pp : mf)
            if (mod_pow(cand, m / pp.p, p) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw std::logic_error("find_primitive_root: no generator found");
    if (pe == p) return g;
    // g lifts to p^e iff g^{p-1} != 1 mod p^2
    std::int64_t p2 = p * p;
    if (mod_pow(g, p - 1, p2) == 1) g += p;
    return g % pe;
}

}  // namespace detail

/// Builds the dual group of (Z/qZ)^x. Throws std::overflow_error when
/// totient(q) exceeds table_limit (default 10^6).
inline CharacterTable build_character_table(std::int64_t q, std::int64_t table_limit = 1'000'000) {
    if (q < 1) throw std::invalid_argument("build_character_table: q must be positive");
    auto st = std::make_shared<UnitGroupStructure>();
    st->q = q;
    st->factors = factorize(q);
    std::int64_t phi = totient(q);
    if (phi > table_limit) throw std::overflow_error("build_character_table: totient(q) exceeds table limit");

    for (const auto& pp : st->factors) {
        std::int64_t pe = pp.value;
        std::int64_t cofactor = q / pe;
        auto lift = [&](std::int64_t g) {
            if (cofactor == 1) return g % q;
            // x = g mod pe, x = 1 mod cofactor
            std::int64_t inv = mod_inverse(cofactor % pe, pe);
            std::int64_t t = mod_mul(((g - 1) % pe + pe) % pe, inv, pe);
            return (1 + mod_mul(cofactor % q, t, q)) % q;
        };
        if (pp.p == 2) {
            if (pp.e == 1) continue;  // trivial unit group
            if (pp.e == 2) {
                st->generators.push_back(lift(3));
                st->orders.push_back(2);
            } else {
                st->generators.push_back(lift(pe - 1));  // -1 mod 2^e
                st->orders.push_back(2);
                st->generators.push_back(lift(5));
                st->orders.push_back(pe / 4);  // 2^{e-2}
            }
        } else {
            st->generators.push_back(lift(detail::find_primitive_root(pp.p, pe)));
            st->orders.push_back(pe / pp.p * (pp.p - 1));
        }
    }

    st->phi = 1;
    st->angle_denominator = 1;
    for (std::int64_t o : st->orders) {
        st->phi *= o;
        st->angle_denominator = std::lcm(st->angle_denominator, o);
    }
    if (st->phi != phi) throw std::logic_error("build_character_table: generator orders inconsistent with totient");

    // dlog by brute-force powering: walk all exponent vectors in rank order,
    // maintaining the residue through prefix products.
    st->dlog_rank.assign(static_cast<std::size_t>(q == 1 ? 1 : q), -1);
    st->residue_of_rank.assign(static_cast<std::size_t>(phi), 0);
    std::size_t n_gen = st->generators.size();
    std::vector<std::int64_t> digits(n_gen, 0);
    std::vector<std::int64_t> prefix(n_gen + 1, 1 % q);  // prefix[i+1] = prod_{j<=i} g_j^{d_j}
    for (std::int64_t rank = 0; rank < phi; ++rank) {
        std::int64_t r = prefix[n_gen];
        if (st->dlog_rank[static_cast<std::size_t>(r)] != -1)
            throw std::logic_error("build_character_table: dlog collision, generators do not generate freely");
        st->dlog_rank[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(rank);
        st->residue_of_rank[static_cast<std::size_t>(rank)] = r;
        if (rank + 1 == phi) break;
        // odometer increment, least significant digit last; phi > 1 here, so
        // generators exist and the odometer cannot wrap early.
        std::size_t i = n_gen;
        while (true) {
            --i;
            if (++digits[i] < st->orders[i]) {
                prefix[i + 1] = mod_mul(prefix[i + 1], st->generators[i], q);
                for (std::size_t j = i + 1; j < n_gen; ++j) {
                    digits[j] = 0;
                    prefix[j + 1] = prefix[j];
                }
                break;
            }
            digits[i] = 0;
        }
    }

    return CharacterTable(std::move(st));
}

}  // namespace lmeasure
