#include <doctest.h>

#include <random>

#include "mpv/arith.hpp"
#include "mpv/fppoly.hpp"

using namespace mpv;

namespace {

// Legendre symbol by Euler's criterion; the reference for odd primes.
int legendre_euler(std::int64_t a, std::uint64_t p) {
    Int r;
    Int base = Int(static_cast<long>(a)) % Int(static_cast<unsigned long>(p));
    if (base < 0) base += Int(static_cast<unsigned long>(p));
    Int e = Int(static_cast<unsigned long>((p - 1) / 2));
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), Int(static_cast<unsigned long>(p)).get_mpz_t());
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("primality and factorization") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(91));
    CHECK(primes_up_to(30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});

    auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
    CHECK(f[1] == std::pair<std::uint64_t, unsigned>{3, 2});
    CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});
    CHECK(factorize(1).empty());
}

TEST_CASE("mobius and sigma") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(sigma1(1) == 1);
    CHECK(sigma1(12) == 28);
    CHECK(sigma1(49) == 57);

    // sum_{d | n} mu(d) = [n == 1]
    for (std::uint64_t n = 1; n <= 200; ++n) {
        int s = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) s += mobius(d);
        CHECK(s == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("kronecker symbol agrees with Euler's criterion at odd primes") {
    for (std::uint64_t p : primes_up_to(200)) {
        if (p == 2) continue;
        for (std::int64_t a = -60; a <= 60; ++a) CHECK(kronecker(a, p) == legendre_euler(a, p));
    }
    // at 2 the Kronecker symbol depends on a mod 8
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-7, 2) == 1);
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(-11, 2) == -1);
}

TEST_CASE("p-adic valuation of integers and rationals") {
    CHECK(vp(Int(0), 2).is_infinite());
    CHECK(vp(Int(96), 2) == Valuation(5));
    CHECK(vp(Int(-96), 3) == Valuation(1));
    CHECK(vp(Int(7), 5) == Valuation(0));
    CHECK(vp(Rat(3, 16), 2) == Valuation(-4));
    CHECK_THROWS_AS(vp(Int(12), 4), ArithError);

    std::mt19937_64 rng(20260418);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    for (int k = 0; k < 500; ++k) {
        Int a(dist(rng)), b(dist(rng));
        if (a == 0 || b == 0) continue;
        for (std::uint64_t p : {2, 3, 5, 11}) CHECK(vp(Int(a * b), p) == vp(a, p) + vp(b, p));
    }
}

TEST_CASE("valuation arithmetic") {
    const Valuation inf = Valuation::infinity();
    CHECK(inf > Valuation(1000000));
    CHECK((inf + Valuation(3)).is_infinite());
    CHECK(std::min(inf, Valuation(2)) == Valuation(2));
    CHECK_THROWS_AS(inf.value(), ArithError);
    CHECK(inf.str() == "inf");
}

TEST_CASE("rational rounding and digits") {
    CHECK(ceil(Rat(19, 2)) == 10);
    CHECK(floor(Rat(19, 2)) == 9);
    CHECK(ceil(Rat(-19, 2)) == -9);
    CHECK(floor(Rat(-19, 2)) == -10);
    CHECK(ceil(Rat(4)) == 4);
    CHECK(decimal_digits(Int(0)) == 1);
    CHECK(decimal_digits(Int(-12345)) == 5);
    CHECK(ipow(Int(2), 90) == Int(1) << 90);
}

TEST_CASE("polynomials over F_p") {
    FpPoly f(7, {1, 2, 3, 0, 0});
    CHECK(f.degree() == 2);
    CHECK(f(2) == (1 + 4 + 12) % 7);

    // f(x + a) evaluated at x equals f at x + a
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t p = 13;
        std::vector<std::uint64_t> c(8);
        for (auto& x : c) x = rng() % p;
        FpPoly g(p, c);
        const std::uint64_t a = rng() % p;
        FpPoly h = g.taylor_shift(a);
        for (std::uint64_t x = 0; x < p; ++x) CHECK(h(x) == g((x + a) % p));
    }
    CHECK(FpPoly(5, {0, 0, 3}).ord() == 2);
    CHECK(FpPoly(5, {}).ord() == -1);
    CHECK(FpPoly::reduce(5, {Int(-1), Int(10), Int(6)}).coeffs() == std::vector<std::uint64_t>{4, 0, 1});
}
