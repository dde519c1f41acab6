#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "lmeasure/char_group.hpp"
#include "lmeasure/lfunction.hpp"
#include "lmeasure/rng.hpp"

namespace lmeasure {

enum class MeasureKind { l_measure, uniform, a_measure };

inline const char* to_string(MeasureKind k) {
    switch (k) {
        case MeasureKind::l_measure: return "l";
        case MeasureKind::uniform: return "uniform";
        case MeasureKind::a_measure: return "a";
    }
    return "?";
}

/// A probability measure on a character table: weights proportional to
/// |L_s(chi)|^2, to 1, or to |L_a(chi)|^2. Immutable once built.
struct CharacterMeasure {
    std::shared_ptr<const CharacterTable> table;
    MeasureKind kind = MeasureKind::uniform;
    double s = 0.0;              // L(s) parameter
    EulerCoefficients coeffs;    // A(a) parameters
    std::vector<double> weights;             // normalized, sums to 1
    double partition_function = 0.0;         // Z before normalization
    double weight_error = 0.0;               // max certified error of an unnormalized weight
    std::vector<double> cumulative;          // inclusive prefix sums for sampling

    std::int64_t q() const { return table->q(); }
    std::int64_t size() const { return table->size(); }
};

namespace detail {

inline void finalize_measure(CharacterMeasure& m, std::vector<double>& raw) {
    NeumaierSum z;
    for (double w : raw) z.add(w);
    m.partition_function = z.total();
    if (!(m.partition_function > 0.0)) throw std::logic_error("measure: non-positive partition function");
    m.weights.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) m.weights[i] = raw[i] / m.partition_function;
    m.cumulative.resize(raw.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        acc += m.weights[i];
        m.cumulative[i] = acc;
    }
    m.cumulative.back() = 1.0;
}

}  // namespace detail

/// Weights proportional to |L_s(chi)|^2 with Z_{s,q} = sum |L_s(chi)|^2
/// recorded before normalization. L-values come from the residue-class
/// summation of the Dirichlet series; conjugate characters share one
/// computation, which also makes the weight symmetry exact.
inline CharacterMeasure build_l_measure(std::shared_ptr<const CharacterTable> table, double s,
                                        TruncationPolicy policy = {}) {
    (void)policy;
    if (!(s > 1.0)) throw std::invalid_argument("build_l_measure: requires s > 1");
    CharacterMeasure m;
    m.table = table;
    m.kind = MeasureKind::l_measure;
    m.s = s;

    const auto& st = table->structure();
    auto rz = make_residue_zeta_table(s, st.q);
    const std::int64_t phi = st.phi;
    std::vector<double> raw(static_cast<std::size_t>(phi), -1.0);
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(st.angle_denominator));
    for (std::int64_t t = 0; t < st.angle_denominator; ++t) {
        double a = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(st.angle_denominator);
        roots[static_cast<std::size_t>(t)] = {std::cos(a), std::sin(a)};
    }

    for (std::int64_t i = 0; i < phi; ++i) {
        std::int64_t ci = table->conjugate_index(i);
        if (ci < i) {
            raw[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(ci)];
            continue;
        }
        std::complex<double> acc{0.0, 0.0};
        for_each_character_value(st, table->character(i).exps(),
                                 [&](std::int64_t, std::int64_t residue, std::int64_t t) {
                                     std::size_t c_idx =
                                         static_cast<std::size_t>(residue == 0 ? st.q - 1 : residue - 1);
                                     acc += roots[static_cast<std::size_t>(t)] * rz.t[c_idx];
                                 });
        double l_abs = std::abs(acc);
        double l_err = rz.bound_sum + 2e-16 * static_cast<double>(st.q) * l_abs;
        raw[static_cast<std::size_t>(i)] = l_abs * l_abs;
        m.weight_error = std::max(m.weight_error, 2.0 * l_abs * l_err + l_err * l_err);
    }
    detail::finalize_measure(m, raw);
    return m;
}

/// The uniform measure: every character gets mass 1/phi(q); Z = phi(q).
inline CharacterMeasure build_uniform_measure(std::shared_ptr<const CharacterTable> table) {
    CharacterMeasure m;
    m.table = table;
    m.kind = MeasureKind::uniform;
    std::vector<double> raw(static_cast<std::size_t>(table->size()), 1.0);
    detail::finalize_measure(m, raw);
    return m;
}

/// Weights proportional to |L_a(chi)|^2 with Z(a) recorded.
inline CharacterMeasure build_a_measure(std::shared_ptr<const CharacterTable> table,
                                        EulerCoefficients coeffs) {
    coeffs.validate();
    CharacterMeasure m;
    m.table = table;
    m.kind = MeasureKind::a_measure;
    m.coeffs = coeffs;
    const std::int64_t phi = table->size();
    std::vector<double> raw(static_cast<std::size_t>(phi), -1.0);
    for (std::int64_t i = 0; i < phi; ++i) {
        std::int64_t ci = table->conjugate_index(i);
        if (ci < i) {
            raw[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(ci)];
            continue;
        }
        auto l = l_a_value(coeffs, table->character(i), *table);
        double l_abs = std::abs(l.value);
        raw[static_cast<std::size_t>(i)] = l_abs * l_abs;
        m.weight_error = std::max(m.weight_error, 2.0 * l_abs * l.bound + l.bound * l.bound);
    }
    detail::finalize_measure(m, raw);
    return m;
}

/// Deterministic i.i.d. draws from a measure.
struct SampleBatch {
    std::uint64_t seed = 0;
    std::int64_t count = 0;
    std::vector<std::int32_t> character_indices;
};

/// Inverse-CDF sampling with a counter-based generator: the batch is a pure
/// function of (measure, seed, count), and any partition of the index range
/// across threads reproduces the same draws.
inline SampleBatch sample(const CharacterMeasure& measure, std::int64_t count, std::uint64_t seed) {
    if (count < 0) throw std::invalid_argument("sample: negative count");
    SampleBatch batch;
    batch.seed = seed;
    batch.count = count;
    batch.character_indices.resize(static_cast<std::size_t>(count));
    CounterRng rng{seed};
    const auto& cum = measure.cumulative;
    for (std::int64_t i = 0; i < count; ++i) {
        double u = rng.uniform(static_cast<std::uint64_t>(i));
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) --it;
        batch.character_indices[static_cast<std::size_t>(i)] =
            static_cast<std::int32_t>(it - cum.begin());
    }
    return batch;
}

}  // namespace lmeasure
