#include "mpv/cval.hpp"

#include <cmath>

#include "mpv/fppoly.hpp"

namespace mpv {

namespace {

std::string p_divides_n_warning(std::uint64_t p, std::uint64_t n) {
    return "p = " + std::to_string(p) + " divides N = " + std::to_string(n);
}

/// Coefficients of Phi(X, J) mod p, X^0 first.
std::vector<std::uint64_t> specialize_mod_p(const BivarPoly& phi, const Int& J, std::uint64_t p) {
    const int dx = phi.degree_x();
    const int dy = phi.degree_y();
    if (dx < 0) return {};
    const std::uint64_t jm = mpz_fdiv_ui(J.get_mpz_t(), p);
    std::vector<std::uint64_t> jpow(static_cast<std::size_t>(dy + 1));
    jpow[0] = 1 % p;
    for (int k = 1; k <= dy; ++k)
        jpow[static_cast<std::size_t>(k)] =
            static_cast<std::uint64_t>(static_cast<unsigned __int128>(jpow[static_cast<std::size_t>(k - 1)]) * jm % p);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(dx + 1), 0);
    for (const auto& [ij, c] : phi.entries()) {
        std::uint64_t cm = mpz_fdiv_ui(c.get_mpz_t(), p);
        auto term = static_cast<std::uint64_t>(static_cast<unsigned __int128>(cm) * jpow[ij.second] % p);
        out[ij.first] = (out[ij.first] + term) % p;
    }
    return out;
}

}  // namespace

CValResult c_val_modp(const BivarPoly& phi, const Int& J, std::uint64_t p) {
    if (!is_prime(p)) throw ArithError("c_val_modp: " + std::to_string(p) + " is not prime");
    CValResult r{phi.level(), p, J, 0, {}};
    if (phi.level() % p == 0) r.warning = p_divides_n_warning(p, phi.level());
    // substitute Y = J first, then shift X
    FpPoly f(p, specialize_mod_p(phi, J, p));
    FpPoly shifted = f.taylor_shift(mpz_fdiv_ui(J.get_mpz_t(), p));
    int ord = shifted.ord();
    if (ord < 0) throw std::logic_error("c_val_modp: Phi_N(X + J, J) vanishes mod p; input is not monic");
    r.value = static_cast<unsigned>(ord);
    return r;
}

CValResult c_val_char0(const BivarPoly& phi, const Int& J) {
    CValResult r{phi.level(), 0, J, 0, {}};
    std::vector<Int> c = phi.specialize_y(J);
    const std::size_t n = c.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t i = n - 1; i > k; --i) c[i - 1] += J * c[i];
    for (std::size_t i = 0; i < n; ++i) {
        if (c[i] != 0) {
            r.value = static_cast<unsigned>(i);
            return r;
        }
    }
    throw std::logic_error("c_val_char0: Phi_N(X + J, J) is identically zero");
}

int kronecker_chi(std::int64_t D, std::uint64_t q) {
    if (D >= 0) throw ArithError("kronecker_chi: discriminant must be negative");
    const std::int64_t r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) throw ArithError("kronecker_chi: " + std::to_string(D) + " is not a discriminant");
    return kronecker(D, q);
}

std::uint64_t ordinary_bound(std::uint64_t N, std::int64_t D) {
    std::uint64_t r = 1;
    for (auto [q, e] : factorize(N)) {
        const auto base = static_cast<std::uint64_t>(1 + kronecker_chi(D, q));
        for (unsigned k = 0; k < e; ++k) r *= base;
    }
    return r;
}

ScanResult ss_prime_scan(const BivarPoly& phi, const Int& J, std::int64_t D, std::uint64_t pmax) {
    ScanResult s;
    s.level = phi.level();
    s.J = J;
    s.D = D;
    s.pmax = pmax;
    s.prime_bound = static_cast<std::uint64_t>(D < 0 ? -D : D) * phi.level();
    s.char0 = c_val_char0(phi, J).value;
    for (std::uint64_t p : primes_up_to(pmax)) {
        if (phi.level() % p == 0) continue;
        unsigned c = c_val_modp(phi, J, p).value;
        if (c > s.char0) {
            s.entries.emplace_back(p, c);
            if (p >= s.prime_bound) s.violations.push_back(p);
        }
    }
    return s;
}

double lambda_N(std::uint64_t N) {
    if (N % 2 == 0) throw ArithError("lambda_N: N must be odd");
    double sum = 0;
    for (auto [p, n] : factorize(N)) {
        const double pd = static_cast<double>(p);
        const double pn = std::pow(pd, static_cast<double>(n));
        sum += (pn - 1.0) / (std::pow(pd, static_cast<double>(n - 1)) * (pd * pd - 1.0)) * std::log(pd);
    }
    return sum;
}

AverageBound avg_bound_check(const BivarPoly& phi) {
    const std::uint64_t N = phi.level();
    if (N % 2 == 0) throw ArithError("avg_bound_check: N = " + std::to_string(N) + " is even");
    AverageBound out;
    out.level = N;
    out.lambda = lambda_N(N);
    if (c_val_char0(phi, 0).value != 0) {
        out.skipped = true;
        out.note = "C_0(N,0) > 0; bound not applicable";
        return out;
    }
    for (std::uint64_t p : primes_up_to(3 * N - 1)) {
        if (N % p == 0) continue;
        unsigned c = c_val_modp(phi, 0, p).value;
        if (c == 0) continue;
        out.terms.emplace_back(p, c);
        out.lhs += c * std::log(static_cast<double>(p));
    }
    out.rhs = 2.0 * static_cast<double>(psi(N)) * (std::log(static_cast<double>(N)) - out.lambda + 8.2);
    out.holds = out.lhs <= out.rhs;
    return out;
}

}  // namespace mpv
