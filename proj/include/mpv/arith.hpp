#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mpv {

using Int = mpz_class;
using Rat = mpq_class;

/// Raised when an argument violates an operation's precondition.
class ArithError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A valuation: an integer or +infinity (the valuation of zero).
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr Valuation(std::int64_t v) : value_(v), finite_(true) {}  // NOLINT: implicit by intent

    static constexpr Valuation infinity() {
        Valuation v;
        v.finite_ = false;
        return v;
    }

    constexpr bool is_infinite() const { return !finite_; }
    constexpr bool is_finite() const { return finite_; }
    std::int64_t value() const {
        if (!finite_) throw ArithError("valuation is infinite");
        return value_;
    }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend constexpr bool operator<(const Valuation& a, const Valuation& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.value_ < b.value_;
    }
    friend constexpr bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend constexpr bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend constexpr bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
    friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }

    std::string str() const { return finite_ ? std::to_string(value_) : std::string("inf"); }
    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

private:
    std::int64_t value_ = 0;
    bool finite_ = true;
};

// ---- small-integer number theory -------------------------------------------

bool is_prime(std::uint64_t n);
/// Prime factorization as (prime, exponent) pairs in increasing order. n >= 1.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

int mobius(std::uint64_t n);
/// Sum of divisors.
std::uint64_t sigma1(std::uint64_t n);
/// Kronecker symbol (a|n) for n >= 1.
int kronecker(std::int64_t a, std::uint64_t n);

// ---- p-adic valuations -----------------------------------------------------

/// v_p(n); throws ArithError if p is not prime.
Valuation vp(const Int& n, std::uint64_t p);
/// v_p of a rational number; +inf for zero, possibly negative.
Valuation vp(const Rat& x, std::uint64_t p);

/// Number of decimal digits of |n| (zero has one digit).
std::size_t decimal_digits(const Int& n);

Int ipow(const Int& base, unsigned long exp);
/// ceil(x) for a rational.
Int ceil(const Rat& x);
/// floor(x) for a rational.
Int floor(const Rat& x);

}  // namespace mpv
