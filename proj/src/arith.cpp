#include "mpv/arith.hpp"

#include <cstdlib>

namespace mpv {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        if (n % d == 0) return n == d;
    }
    Int z(std::to_string(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    if (n == 0) throw ArithError("factorize: n must be positive");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d != 0) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t k = i * i; k <= bound; k += i) composite[k] = true;
    }
    return out;
}

int mobius(std::uint64_t n) {
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::uint64_t sigma1(std::uint64_t n) {
    std::uint64_t s = 1;
    for (auto [p, e] : factorize(n)) {
        std::uint64_t term = 1, pk = 1;
        for (unsigned k = 0; k < e; ++k) {
            pk *= p;
            term += pk;
        }
        s *= term;
    }
    return s;
}

int kronecker(std::int64_t a, std::uint64_t n) {
    if (n == 0) throw ArithError("kronecker: n must be positive");
    Int za(std::to_string(a));
    Int zn(std::to_string(n));
    return mpz_kronecker(za.get_mpz_t(), zn.get_mpz_t());
}

Valuation vp(const Int& n, std::uint64_t p) {
    if (!is_prime(p)) throw ArithError("vp: modulus " + std::to_string(p) + " is not prime");
    if (n == 0) return Valuation::infinity();
    Int rest;
    Int zp(std::to_string(p));
    auto v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), zp.get_mpz_t());
    return Valuation(static_cast<std::int64_t>(v));
}

Valuation vp(const Rat& x, std::uint64_t p) {
    if (x == 0) return Valuation::infinity();
    return Valuation(vp(Int(x.get_num()), p).value() - vp(Int(x.get_den()), p).value());
}

std::size_t decimal_digits(const Int& n) {
    if (n == 0) return 1;
    std::string s = Int(abs(n)).get_str();
    return s.size();
}

Int ipow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Int ceil(const Rat& x) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Int floor(const Rat& x) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

}  // namespace mpv
