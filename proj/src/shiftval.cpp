#include "mpv/shiftval.hpp"

#include <algorithm>
#include <sstream>

#include "mpv/cval.hpp"

namespace mpv {

// ---- shifting and valuations ---------------------------------------------------

namespace {

void taylor_shift(std::vector<Int>& c, const Int& a) {
    const std::size_t n = c.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t i = n - 1; i > k; --i)
            if (c[i] != 0) mpz_addmul(c[i - 1].get_mpz_t(), a.get_mpz_t(), c[i].get_mpz_t());
}

/// Exact v_p(a) for a != 0, computed modulo p^cap with cap doubling.
std::int64_t valuation_with_cap(const Int& a, const Int& p, unsigned& cap, Int& modulus) {
    while (true) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
        if (r != 0) {
            Int rest;
            return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t()));
        }
        cap *= 2;
        modulus = ipow(p, cap);
    }
}

Int to_int(std::uint64_t v) { return Int(std::to_string(v)); }

}  // namespace

BivarPoly shift_poly(const BivarPoly& poly, const Int& J) {
    if (J == 0 || poly.size() == 0) return poly;
    const auto dx = static_cast<std::size_t>(poly.degree_x());
    const auto dy = static_cast<std::size_t>(poly.degree_y());
    std::vector<std::vector<Int>> m(dx + 1, std::vector<Int>(dy + 1));
    for (const auto& [ij, c] : poly.entries()) m[ij.first][ij.second] = c;
    for (auto& row : m) taylor_shift(row, J);
    std::vector<Int> col(dx + 1);
    for (std::size_t j = 0; j <= dy; ++j) {
        for (std::size_t i = 0; i <= dx; ++i) col[i] = m[i][j];
        taylor_shift(col, J);
        for (std::size_t i = 0; i <= dx; ++i) m[i][j] = col[i];
    }
    BivarPoly out(poly.level());
    for (std::size_t i = 0; i <= dx; ++i)
        for (std::size_t j = 0; j <= dy; ++j)
            if (m[i][j] != 0) out.set(static_cast<unsigned>(i), static_cast<unsigned>(j), std::move(m[i][j]));
    return out;
}

std::map<BivarPoly::Index, std::int64_t> coeff_valuations(const BivarPoly& poly, std::uint64_t p, unsigned cap) {
    if (!is_prime(p)) throw ArithError("coeff_valuations: " + std::to_string(p) + " is not prime");
    cap = std::max(cap, 1U);
    const Int zp = to_int(p);
    Int modulus = ipow(zp, cap);
    std::map<BivarPoly::Index, std::int64_t> out;
    for (const auto& [ij, c] : poly.entries()) out.emplace(ij, valuation_with_cap(c, zp, cap, modulus));
    return out;
}

ValuationReport check_bound(const BivarPoly& poly, std::uint64_t p, const Rat& n, unsigned C, std::string rule) {
    ValuationReport rep;
    rep.level = poly.level();
    rep.p = p;
    rep.n = n;
    rep.C = C;
    rep.rule = std::move(rule);
    if (C == 0) return rep;
    const Int zp = to_int(p);
    unsigned cap = static_cast<unsigned>(std::max<long>(1, ceil(n * C).get_si() + 8));
    Int modulus = ipow(zp, cap);
    for (const auto& [ij, c] : poly.entries()) {
        auto [i, j] = ij;
        if (i + j >= C) continue;
        SlackEntry e;
        e.i = i;
        e.j = j;
        e.valuation = valuation_with_cap(c, zp, cap, modulus);
        e.bound = n * Rat(static_cast<long>(C - i - j));
        e.slack = Rat(static_cast<long>(e.valuation)) - e.bound;
        if (!rep.min_slack || e.slack < *rep.min_slack) rep.min_slack = e.slack;
        if (e.slack < 0) rep.violations.push_back(e);
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

std::vector<ValuationReport> verify_coefficient_bounds(const BivarPoly& phi) {
    const std::uint64_t N = phi.level();
    const auto d = static_cast<unsigned>(psi(N));
    std::vector<ValuationReport> out;
    if (N % 2 != 0) out.push_back(check_bound(phi, 2, 15, d, "2 does not divide N: n = 15, C = psi(N)"));
    if (N % 3 == 1) out.push_back(check_bound(phi, 3, Rat(9, 2), d, "N = 1 mod 3: n = 9/2, C = psi(N)"));
    if (N % 3 == 2) out.push_back(check_bound(phi, 3, 3, d, "N = 2 mod 3: n = 3, C = psi(N)"));
    if (N % 5 != 0) out.push_back(check_bound(phi, 5, 3, d, "5 does not divide N: n = 3, C = psi(N)"));

    const unsigned c0_char0 = c_val_char0(phi, 0).value;
    for (std::uint64_t p : primes_up_to(3 * N - 1)) {
        if (p < 11 || p % 3 != 2 || N % p == 0) continue;
        const std::string rule = "p = 2 mod 3, p >= 11: n = 3, C = C_0(N,p)";
        if (c0_char0 > 0) {
            ValuationReport rep;
            rep.level = N;
            rep.p = p;
            rep.n = 3;
            rep.rule = rule;
            rep.skipped = true;
            rep.note = "C_0(N,0) = " + std::to_string(c0_char0) + " > 0; level flagged and skipped";
            out.push_back(std::move(rep));
            continue;
        }
        const unsigned C = c_val_modp(phi, 0, p).value;
        out.push_back(check_bound(phi, p, 3, C, rule));
    }
    return out;
}

// ---- singular moduli ---------------------------------------------------------------

const std::vector<SingularModulusRecord>& singular_moduli() {
    using E = SingularModulusRecord::Exception;
    static const std::vector<SingularModulusRecord> table = [] {
        auto rec = [](const char* J, const char* fac, std::int64_t D, std::vector<E> ex) {
            return SingularModulusRecord{Int(J), fac, D, 1, std::move(ex)};
        };
        return std::vector<SingularModulusRecord>{
            rec("0", "-2^6*3^3", -3, {{3, 3, {1}, Rat(9, 2)}, {3, 3, {2}, Rat(3)}}),
            rec("54000", "2^4*3^3*11^2", -12,
                {{2, 1, {0}, Rat(19, 2)}, {3, 3, {1}, Rat(9, 2)}, {3, 3, {2}, Rat(3)}}),
            rec("-12288000", "-2^6*3*11^2*23^2", -27, {{3, 6, {1, 5}, Rat(4, 3)}, {3, 6, {2, 4}, Rat(1, 2)}}),
            rec("1728", "0", -4, {{2, 4, {1}, Rat(10)}, {2, 4, {3}, Rat(9)}}),
            rec("287496", "2^3*3^6*7^2", -16, {{2, 4, {1}, Rat(5)}, {2, 4, {3}, Rat(9, 2)}}),
            rec("-3375", "-3^6*7", -7, {{7, 1, {0}, Rat(1)}}),
            rec("16581375", "3^8*7*19^2", -28, {{7, 1, {0}, Rat(1)}}),
            rec("8000", "2^7*7^2", -8, {{2, 1, {0}, Rat(19, 2)}}),
            rec("-32768", "-2^6*7^2*11", -11, {{11, 1, {0}, Rat(1)}}),
            rec("-884736", "-2^6*3^6*19", -19, {{19, 1, {0}, Rat(1)}}),
            rec("-884736000", "-2^6*3^8*7^2*43", -43, {{43, 1, {0}, Rat(1)}}),
            rec("-147197952000", "-2^6*3^6*7^2*31^2*67", -67, {{67, 1, {0}, Rat(1)}}),
            rec("-262537412640768000", "-2^6*3^6*7^2*11^2*19^2*127^2*163", -163, {{163, 1, {0}, Rat(1)}}),
        };
    }();
    return table;
}

const SingularModulusRecord& singular_modulus_by_D(std::int64_t D) {
    for (const auto& r : singular_moduli())
        if (r.D == D) return r;
    throw ArithError("no rational singular modulus with discriminant " + std::to_string(D));
}

Rat singular_multiplier(const SingularModulusRecord& rec, std::uint64_t p, std::uint64_t N) {
    for (const auto& ex : rec.exceptional_n) {
        if (ex.p != p) continue;
        const auto r = static_cast<unsigned>(N % ex.modulus);
        if (std::find(ex.residues.begin(), ex.residues.end(), r) != ex.residues.end()) return ex.n;
    }
    const Int zp = to_int(p);
    auto divides = [&](const Int& x) { return mpz_divisible_p(x.get_mpz_t(), zp.get_mpz_t()) != 0; };
    if (divides(rec.J)) {
        if (p == 2) return 15;
        if (p == 3) return 6;
        return 3;
    }
    if (p >= 5 && divides(rec.J - 1728)) return 2;
    return 1;
}

std::vector<ValuationReport> verify_singular(const BivarPoly& phi, const SingularModulusRecord& rec) {
    const std::uint64_t N = phi.level();
    const std::uint64_t bound = static_cast<std::uint64_t>(-rec.D) * N;
    const BivarPoly shifted = shift_poly(phi, rec.J);
    const unsigned char0 = c_val_char0(phi, rec.J).value;
    std::vector<ValuationReport> out;
    for (std::uint64_t p : primes_up_to(bound - 1)) {
        if (N % p == 0 || kronecker_chi(rec.D, p) == 1) continue;
        const unsigned C = c_val_modp(phi, rec.J, p).value;
        const Rat n = singular_multiplier(rec, p, N);
        auto report = check_bound(shifted, p, n, C, "J = " + rec.J.get_str() + ", D = " + std::to_string(rec.D) +
                                                        ": n_p = " + n.get_str() + ", C = C_J(N,p)");
        // J is then N-isogenous to itself in characteristic 0, and the
        // low-order coefficients of Phi_N(X + J, Y + J) vanish identically.
        if (char0 > 0)
            report.note = "C_J(N,0) = " + std::to_string(char0) + " > 0: Phi_N(J, J) = 0 in characteristic 0";
        out.push_back(std::move(report));
    }
    return out;
}

// ---- interpolation bound ------------------------------------------------------------

bool interpolation_bound_check(const std::vector<LocalElement>& coeffs, const std::vector<LocalElement>& points, std::int64_t n) {
    if (coeffs.empty()) throw std::invalid_argument("interpolation_bound_check: empty polynomial");
    if (points.size() != coeffs.size())
        throw HypothesisViolation("need deg(f) + 1 = " + std::to_string(coeffs.size()) + " interpolation points");
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].valuation() != Valuation(n))
            throw HypothesisViolation("v(y_" + std::to_string(k) + ") = " + points[k].valuation().str() + " != " + std::to_string(n));
        for (std::size_t l = k + 1; l < points.size(); ++l) {
            Valuation v = (points[k] - points[l]).valuation();
            if (v != Valuation(n))
                throw HypothesisViolation("v(y_" + std::to_string(k) + " - y_" + std::to_string(l) + ") = " + v.str());
        }
    }
    Valuation m = Valuation::infinity();
    for (const auto& y : points) {
        LocalElement acc(y.ring());
        for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * y + coeffs[j];
        m = std::min(m, acc.valuation());
    }
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        Valuation lower = m.is_infinite() ? m : Valuation(m.value() - n * static_cast<std::int64_t>(j));
        if (coeffs[j].valuation() < lower) return false;
    }
    return true;
}

// ---- compressed storage ----------------------------------------------------------------

unsigned stripped_exponent(const CompressedPoly& header, std::uint64_t p, unsigned i, unsigned j) {
    const std::uint64_t N = header.level;
    const auto d = static_cast<unsigned>(psi(N));
    const unsigned s = (i + j < d) ? d - i - j : 0;
    switch (p) {
        case 2:
            return N % 2 != 0 ? 15 * s : 0;
        case 3:
            if (N % 3 == 1) return (9 * s + 1) / 2;
            if (N % 3 == 2) return 3 * s;
            return 0;
        case 5:
            return N % 5 != 0 ? 3 * s : 0;
        default:
            break;
    }
    if (header.version < 2) return 0;
    auto it = header.c0.find(p);
    if (it == header.c0.end() || i + j >= it->second) return 0;
    return 3 * (it->second - i - j);
}

namespace {

std::vector<std::uint64_t> stripped_primes(const CompressedPoly& c) {
    std::vector<std::uint64_t> ps{2, 3, 5};
    for (const auto& [p, C] : c.c0) ps.push_back(p);
    return ps;
}

Int stripped_factor(const CompressedPoly& c, unsigned i, unsigned j) {
    Int f = 1;
    for (std::uint64_t p : stripped_primes(c)) {
        unsigned e = stripped_exponent(c, p, i, j);
        if (e > 0) f *= ipow(to_int(p), e);
    }
    return f;
}

}  // namespace

CompressedPoly compress(const BivarPoly& phi, unsigned version) {
    if (version != 1 && version != 2) throw CompressionError("unsupported format version " + std::to_string(version));
    CompressedPoly out;
    out.level = phi.level();
    out.version = version;
    const std::uint64_t N = phi.level();
    if (version == 2 && c_val_char0(phi, 0).value == 0) {
        for (std::uint64_t p : primes_up_to(3 * N - 1)) {
            if (p < 11 || p % 3 != 2 || N % p == 0) continue;
            unsigned C = c_val_modp(phi, 0, p).value;
            if (C > 0) out.c0.emplace(p, C);
        }
    }
    for (const auto& [ij, a] : phi.entries()) {
        auto [i, j] = ij;
        if (i < j) continue;
        Int f = stripped_factor(out, i, j);
        if (!mpz_divisible_p(a.get_mpz_t(), f.get_mpz_t()))
            throw CompressionError("a_{" + std::to_string(i) + "," + std::to_string(j) +
                                   "} is not divisible by its predicted factor");
        Int r;
        mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), f.get_mpz_t());
        out.residuals.emplace(ij, std::move(r));
    }
    return out;
}

BivarPoly decompress(const CompressedPoly& c) {
    BivarPoly out(c.level);
    for (const auto& [ij, r] : c.residuals) {
        auto [i, j] = ij;
        if (i < j) throw CompressionError("residual stored below the diagonal");
        Int a = r * stripped_factor(c, i, j);
        out.set(i, j, a);
        out.set(j, i, a);
    }
    return out;
}

std::string serialize_compressed(const CompressedPoly& c) {
    std::ostringstream os;
    os << "MODPOLYC " << c.version << ' ' << c.level << '\n';
    if (c.version >= 2)
        for (const auto& [p, C] : c.c0) os << "C0 " << p << ' ' << C << '\n';
    for (const auto& [ij, r] : c.residuals) {
        if (r == 0) continue;
        os << ij.first << ' ' << ij.second << ' ' << r.get_str() << '\n';
    }
    os << "END\n";
    return os.str();
}

CompressedPoly parse_compressed(std::string_view text) {
    CompressedPoly c;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    bool ended = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (ended) throw ParseError(lineno, "data after END");
        std::istringstream ls(line);
        if (!header) {
            std::string magic;
            if (!(ls >> magic >> c.version >> c.level) || magic != "MODPOLYC" || (c.version != 1 && c.version != 2))
                throw ParseError(lineno, "expected `MODPOLYC <version> <N>`");
            header = true;
            continue;
        }
        if (line == "END") {
            ended = true;
            continue;
        }
        if (line.rfind("C0 ", 0) == 0) {
            std::string tag;
            std::uint64_t p = 0;
            unsigned C = 0;
            if (c.version < 2 || !(ls >> tag >> p >> C) || !c.residuals.empty())
                throw ParseError(lineno, "misplaced or malformed C0 line");
            c.c0[p] = C;
            continue;
        }
        unsigned i = 0, j = 0;
        std::string rs;
        Int r;
        if (!(ls >> i >> j >> rs) || r.set_str(rs, 10) != 0 || i < j)
            throw ParseError(lineno, "expected `<i> <j> <residual>` with i >= j");
        if (!c.residuals.emplace(BivarPoly::Index{i, j}, r).second) throw ParseError(lineno, "duplicate entry");
    }
    if (!header) throw ParseError(lineno, "empty input");
    if (!ended) throw ParseError(lineno, "missing END");
    return c;
}

DigitStats digit_stats(const BivarPoly& phi, const CompressedPoly& c) {
    DigitStats s;
    for (const auto& [ij, a] : phi.entries())
        if (ij.first >= ij.second) s.naive_digits += a.get_str().size();
    for (const auto& [ij, r] : c.residuals) s.compressed_digits += r.get_str().size();
    s.saving = s.naive_digits == 0 ? 0.0
                                   : 1.0 - static_cast<double>(s.compressed_digits) / static_cast<double>(s.naive_digits);
    return s;
}

}  // namespace mpv
