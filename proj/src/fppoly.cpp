#include "mpv/fppoly.hpp"

#include <string>

namespace mpv {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return (s >= p || s < a) ? s - p : s;
}

}  // namespace

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    if (!is_prime(p_)) throw ArithError("FpPoly: modulus " + std::to_string(p_) + " is not prime");
    for (auto& c : coeffs_) c %= p_;
    trim();
}

FpPoly FpPoly::reduce(std::uint64_t p, const std::vector<Int>& coeffs) {
    std::vector<std::uint64_t> r;
    r.reserve(coeffs.size());
    for (const auto& c : coeffs) r.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    return FpPoly(p, std::move(r));
}

void FpPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int FpPoly::ord() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return static_cast<int>(i);
    return -1;
}

std::uint64_t FpPoly::operator()(std::uint64_t x) const {
    x %= p_;
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = addmod(mulmod(acc, x, p_), coeffs_[i], p_);
    return acc;
}

FpPoly FpPoly::taylor_shift(std::uint64_t a) const {
    a %= p_;
    std::vector<std::uint64_t> c = coeffs_;
    // repeated synthetic division by (X - a)
    const std::size_t n = c.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t i = n - 1; i > k; --i) c[i - 1] = addmod(c[i - 1], mulmod(a, c[i], p_), p_);
    return FpPoly(p_, std::move(c));
}

}  // namespace mpv
