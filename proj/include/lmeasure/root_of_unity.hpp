#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace lmeasure {

/// A root of unity e^{2 pi i num/den} stored as an exact reduced rational
/// angle, or the null value 0 (the value a Dirichlet character takes off the
/// units). Arithmetic on angles is exact; conversion to complex happens only
/// at the boundary.
class RootOfUnity {
  public:
    RootOfUnity() : num_(0), den_(1), null_(false) {}

    static RootOfUnity null() {
        RootOfUnity r;
        r.null_ = true;
        return r;
    }

    /// e^{2 pi i num/den}; the fraction is reduced and shifted into [0, 1).
    static RootOfUnity from_fraction(std::int64_t num, std::int64_t den) {
        if (den <= 0) throw std::invalid_argument("RootOfUnity: denominator must be positive");
        num %= den;
        if (num < 0) num += den;
        std::int64_t g = std::gcd(num, den);
        if (g == 0) g = 1;
        RootOfUnity r;
        r.num_ = num / g;
        r.den_ = den / g;
        return r;
    }

    static RootOfUnity one() { return RootOfUnity(); }

    bool is_null() const { return null_; }
    bool is_one() const { return !null_ && num_ == 0; }
    std::int64_t angle_numerator() const { return num_; }
    std::int64_t angle_denominator() const { return den_; }

    RootOfUnity conj() const {
        if (null_) return *this;
        return from_fraction(-num_, den_);
    }

    RootOfUnity operator*(const RootOfUnity& o) const {
        if (null_ || o.null_) return null();
        // common denominator without overflow at desk scale: den <= 10^6
        std::int64_t g = std::gcd(den_, o.den_);
        std::int64_t d = den_ / g * o.den_;
        return from_fraction(num_ * (o.den_ / g) + o.num_ * (den_ / g), d);
    }

    RootOfUnity pow(std::int64_t k) const {
        if (null_) return k == 0 ? one() : null();
        std::int64_t e = ((k % den_) + den_) % den_;
        return from_fraction(static_cast<std::int64_t>((static_cast<__int128>(num_) * e) % den_), den_);
    }

    std::complex<double> to_complex() const {
        if (null_) return {0.0, 0.0};
        double t = 2.0 * M_PI * static_cast<double>(num_) / static_cast<double>(den_);
        return {std::cos(t), std::sin(t)};
    }

    /// Angle in [0, 2 pi); null has no angle.
    double angle() const {
        if (null_) throw std::domain_error("RootOfUnity: null value has no angle");
        return 2.0 * M_PI * static_cast<double>(num_) / static_cast<double>(den_);
    }

    bool operator==(const RootOfUnity& o) const {
        if (null_ != o.null_) return false;
        if (null_) return true;
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RootOfUnity& o) const { return !(*this == o); }

  private:
    std::int64_t num_;
    std::int64_t den_;
    bool null_;
};

}  // namespace lmeasure
