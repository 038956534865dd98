#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mpv/arith.hpp"
#include "mpv/modpoly.hpp"

namespace mpv {

/// ord_X(Phi_N(X + J, J)) in characteristic p (p > 0) or zero (p == 0).
struct CValResult {
    std::uint64_t level = 0;
    std::uint64_t p = 0;
    Int J;
    unsigned value = 0;
    /// Set when p | N: the count is still well defined but outside the
    /// hypotheses of the isogeny-count interpretation.
    std::string warning;
};

/// C_J(N, p) from Phi_N(X + J, J) reduced mod p.
CValResult c_val_modp(const BivarPoly& phi, const Int& J, std::uint64_t p);
/// C_J(N, 0) from the exact integer polynomial Phi_N(X + J, J).
CValResult c_val_char0(const BivarPoly& phi, const Int& J);

/// Kronecker character chi_D(q) for a negative discriminant D.
int kronecker_chi(std::int64_t D, std::uint64_t q);

/// prod_{q | N} (1 + chi_D(q))^{v_q(N)}; an upper bound for C_J(N, p) at
/// ordinary primes, attained when the endomorphism ring is a PID.
std::uint64_t ordinary_bound(std::uint64_t N, std::int64_t D);

struct ScanResult {
    std::uint64_t level = 0;
    Int J;
    std::int64_t D = 0;
    std::uint64_t pmax = 0;
    unsigned char0 = 0;
    /// |D| * N: every prime with C_J(N, p) > C_J(N, 0) must lie below it.
    std::uint64_t prime_bound = 0;
    std::vector<std::pair<std::uint64_t, unsigned>> entries;
    /// Listed primes at or above prime_bound (counterexamples to the bound).
    std::vector<std::uint64_t> violations;
};

/// All primes p <= pmax with p not dividing N and C_J(N, p) > C_J(N, 0).
ScanResult ss_prime_scan(const BivarPoly& phi, const Int& J, std::int64_t D, std::uint64_t pmax);

/// lambda_N = sum over p^n || N of (p^n - 1) / (p^(n-1) (p^2 - 1)) * log p.
double lambda_N(std::uint64_t N);

struct AverageBound {
    std::uint64_t level = 0;
    double lhs = 0;
    double rhs = 0;
    double lambda = 0;
    bool holds = false;
    bool skipped = false;
    std::string note;
    /// (p, C_0(N, p)) for the primes contributing to lhs.
    std::vector<std::pair<std::uint64_t, unsigned>> terms;
};

/// sum_{p < 3N, p not dividing N} C_0(N, p) log p <= 2 psi(N) (log N - lambda_N + 8.2),
/// for odd N with C_0(N, 0) = 0 (skipped with a note otherwise).
AverageBound avg_bound_check(const BivarPoly& phi);

}  // namespace mpv
