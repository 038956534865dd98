#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mpv/arith.hpp"

namespace mpv {

/// Totally ramified extension Z_p[theta]/(f) of the p-adic integers, where f
/// is a monic Eisenstein polynomial of degree e. Valuations are normalized so
/// that v(theta) = 1 and v(p) = e.
class LocalRing {
public:
    /// `f` lists the coefficients of a monic polynomial from the constant term
    /// up; f.back() must be 1. Throws ArithError unless f is Eisenstein at p.
    LocalRing(std::uint64_t p, std::vector<Int> f);

    /// The ring Z_p itself (e = 1, theta = p).
    static std::shared_ptr<const LocalRing> trivial(std::uint64_t p);
    static std::shared_ptr<const LocalRing> make(std::uint64_t p, std::vector<Int> f);

    std::uint64_t p() const { return p_; }
    unsigned e() const { return static_cast<unsigned>(f_.size() - 1); }
    const std::vector<Int>& modulus() const { return f_; }

    bool operator==(const LocalRing& o) const { return p_ == o.p_ && f_ == o.f_; }
    std::string str() const;

    static bool is_eisenstein(std::uint64_t p, const std::vector<Int>& f);

private:
    std::uint64_t p_;
    std::vector<Int> f_;
};

using LocalRingPtr = std::shared_ptr<const LocalRing>;

/// Element of the fraction field of a LocalRing, stored as rational
/// coordinates on the basis 1, theta, ..., theta^(e-1).
class LocalElement {
public:
    LocalElement() = default;
    explicit LocalElement(LocalRingPtr ring);                         // zero
    LocalElement(LocalRingPtr ring, const Rat& scalar);               // embedded rational
    LocalElement(LocalRingPtr ring, std::vector<Rat> coords);

    static LocalElement uniformizer(LocalRingPtr ring);

    const LocalRingPtr& ring() const { return ring_; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool is_zero() const;
    /// min_i (e * v_p(coords[i]) + i); +infinity for zero.
    Valuation valuation() const;

    LocalElement operator-() const;
    friend LocalElement operator+(const LocalElement& a, const LocalElement& b);
    friend LocalElement operator-(const LocalElement& a, const LocalElement& b);
    friend LocalElement operator*(const LocalElement& a, const LocalElement& b);
    friend LocalElement operator*(const Rat& c, const LocalElement& a);
    LocalElement& operator+=(const LocalElement& b);
    LocalElement& operator*=(const LocalElement& b);
    LocalElement pow(unsigned k) const;
    /// Division by a nonzero rational scalar.
    LocalElement divided_by(const Rat& c) const;

    friend bool operator==(const LocalElement& a, const LocalElement& b);
    friend bool operator!=(const LocalElement& a, const LocalElement& b) { return !(a == b); }

    std::string str() const;

private:
    void require_same_ring(const LocalElement& o) const;

    LocalRingPtr ring_;
    std::vector<Rat> coords_;
};

inline Valuation local_val(const LocalElement& x) { return x.valuation(); }
/// Product in the ring; throws ArithError on mismatched rings.
inline LocalElement local_mul(const LocalElement& x, const LocalElement& y) { return x * y; }

}  // namespace mpv
