#include "mpv/quatorder.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mpv {

namespace {

using Vec4 = std::array<Rat, 4>;

/// Quaternion algebra (a, b): i^2 = a, j^2 = b, k = ij.
struct Algebra {
    Rat a, b;

    Vec4 mul(const Vec4& x, const Vec4& y) const {
        Vec4 c;
        c[0] = x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3];
        c[1] = x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2];
        c[2] = x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1];
        c[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
        return c;
    }

    Rat nrd(const Vec4& x) const {
        return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
    }
};

bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Inverse of a 4x4 rational matrix by Gauss-Jordan; throws if singular.
std::array<Vec4, 4> invert(std::array<Vec4, 4> m) {
    std::array<Vec4, 4> inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        while (piv < 4 && m[piv][col] == 0) ++piv;
        if (piv == 4) throw std::invalid_argument("quaternion basis is linearly dependent");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = m[col][col];
        for (int k = 0; k < 4; ++k) {
            m[col][k] /= d;
            inv[col][k] /= d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int k = 0; k < 4; ++k) {
                m[r][k] -= f * m[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

/// Gram matrix of nrd on the lattice spanned by `basis`, after checking that
/// the lattice contains 1 and is closed under multiplication.
Gram order_gram(const Algebra& alg, const std::array<Vec4, 4>& basis) {
    // coordinates of v in the basis: v * inv (row vectors)
    const auto inv = invert(basis);
    auto coords = [&](const Vec4& v) {
        Vec4 c;
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) c[k] += v[l] * inv[l][k];
        return c;
    };
    for (const Rat& c : coords(Vec4{1, 0, 0, 0}))
        if (!is_integer(c)) throw std::logic_error("quaternion basis does not contain 1");
    for (const auto& x : basis)
        for (const auto& y : basis)
            for (const Rat& c : coords(alg.mul(x, y)))
                if (!is_integer(c)) throw std::logic_error("quaternion basis is not closed under multiplication");

    Gram g;
    for (int k = 0; k < 4; ++k) {
        g[k][k] = alg.nrd(basis[k]);
        for (int l = k + 1; l < 4; ++l) {
            Vec4 s;
            for (int t = 0; t < 4; ++t) s[t] = basis[k][t] + basis[l][t];
            g[k][l] = (alg.nrd(s) - alg.nrd(basis[k]) - alg.nrd(basis[l])) / 2;
            g[l][k] = g[k][l];
        }
    }
    return g;
}

Rat det4(Gram m) {
    Rat det = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        while (piv < 4 && m[piv][col] == 0) ++piv;
        if (piv == 4) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            Rat f = m[r][col] / m[col][col];
            for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
        }
    }
    return det;
}

/// Fincke-Pohst form: Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
/// Throws if Q is not positive definite.
Gram fp_decompose(const Gram& g) {
    Gram q = g;
    for (int i = 0; i < 4; ++i) {
        if (q[i][i] <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
        for (int j = i + 1; j < 4; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (int k = i + 1; k < 4; ++k)
            for (int l = k; l < 4; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    return q;
}

Int isqrt_floor(const Rat& t) {
    Int f = floor(t);
    if (f < 0) return -1;
    Int r;
    mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
    return r;
}

struct Enumerator {
    const Gram& q;
    const Rat bound;
    std::vector<std::uint64_t>& counts;
    std::array<Int, 4> x;

    void run(int i, const Rat& remaining) {
        Rat c = 0;
        for (int j = i + 1; j < 4; ++j) c -= q[i][j] * x[j];
        const Rat t = remaining / q[i][i];
        const Int s = isqrt_floor(t);
        if (s < 0) return;
        const Int lo = floor(c) - s - 1;
        const Int hi = ceil(c) + s + 1;
        for (Int xi = lo; xi <= hi; ++xi) {
            Rat d = Rat(xi) - c;
            Rat used = q[i][i] * d * d;
            if (used > remaining) continue;
            x[i] = xi;
            Rat rest = remaining - used;
            if (i == 0) {
                Rat norm = bound - rest;
                if (!is_integer(norm)) throw std::logic_error("theta enumeration produced a non-integral norm");
                counts[norm.get_num().get_ui()] += 1;
            } else {
                run(i - 1, rest);
            }
        }
    }
};

std::uint64_t factor_of(CNorm n) { return static_cast<std::uint64_t>(n); }

void check_mass(const QuatOrder& o) {
    // single-class primes: 1 / #O* = (p - 1) / 24
    Rat expected(o.p() - 1, 24);
    expected.canonicalize();
    if (Rat(1, o.unit_count()) != expected)
        throw std::invalid_argument("order for p = " + std::to_string(o.p()) + " has " + std::to_string(o.unit_count()) +
                                    " units, inconsistent with the mass formula");
}

bool single_class(std::uint64_t p) { return p == 2 || p == 3 || p == 5 || p == 7 || p == 13; }

}  // namespace

QuatOrder::QuatOrder(std::uint64_t p, Gram gram, std::string label) : p_(p), gram_(std::move(gram)), label_(std::move(label)) {
    if (!is_prime(p)) throw std::invalid_argument("QuatOrder: p = " + std::to_string(p) + " is not prime");
    for (int k = 0; k < 4; ++k) {
        if (!is_integer(gram_[k][k])) throw std::invalid_argument("QuatOrder: diagonal entry is not an integer");
        for (int l = 0; l < 4; ++l) {
            if (gram_[k][l] != gram_[l][k]) throw std::invalid_argument("QuatOrder: Gram matrix is not symmetric");
            if (!is_integer(gram_[k][l] * 2)) throw std::invalid_argument("QuatOrder: norm form is not integral");
        }
    }
    fp_decompose(gram_);
    const Rat det = trace_form_det();
    if (det != Rat(Int(p) * p))
        throw std::invalid_argument("QuatOrder: det(2Q) = " + det.get_str() + ", expected p^2 for a maximal order");
    unit_count_ = theta_series(*this, 1)[1];
}

Rat QuatOrder::norm(const std::array<std::int64_t, 4>& x) const {
    Rat s = 0;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += gram_[k][l] * Rat(static_cast<long>(x[k])) * Rat(static_cast<long>(x[l]));
    return s;
}

Rat QuatOrder::trace_form_det() const {
    Gram two = gram_;
    for (auto& row : two)
        for (auto& v : row) v *= 2;
    return det4(two);
}

const QuatOrder& order_registry(std::uint64_t p) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<QuatOrder>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(p); it != cache.end()) return *it->second;

    Algebra alg;
    std::array<Vec4, 4> basis;
    std::string label;
    const Rat h(1, 2), f(1, 4);
    switch (p) {
        case 2:
            alg = {-1, -1};
            basis = {Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}, Vec4{h, h, h, h}};
            label = "Hurwitz order in (-1,-1)";
            break;
        case 3:
        case 7:
            alg = {-1, -Rat(p)};
            basis = {Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{h, 0, h, 0}, Vec4{0, h, 0, h}};
            label = "<1, i, (1+j)/2, (i+k)/2> in (-1,-" + std::to_string(p) + ")";
            break;
        case 5:
        case 13:
            alg = {-2, -Rat(p)};
            basis = {Vec4{1, 0, 0, 0}, Vec4{h, 0, h, h}, Vec4{0, f, 2 * f, f}, Vec4{0, 0, 0, 1}};
            label = "<1, (1+j+k)/2, (i+2j+k)/4, k> in (-2,-" + std::to_string(p) + ")";
            break;
        default:
            throw std::invalid_argument("order_registry: no order for p = " + std::to_string(p) +
                                        " (available: 2, 3, 5, 7, 13)");
    }
    auto order = std::make_unique<QuatOrder>(p, order_gram(alg, basis), label);
    check_mass(*order);
    return *(cache[p] = std::move(order));
}

Int supersingular_j(std::uint64_t p) {
    switch (p) {
        case 2:
        case 3:
        case 5: return 0;
        case 7: return 1728;
        case 13: return 5;
        default: throw std::invalid_argument("supersingular_j: p = " + std::to_string(p) + " has more than one class");
    }
}

QuatOrder parse_order_file(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
    }
    if (tokens.size() != 17)
        throw std::invalid_argument("order file: expected p followed by 16 matrix entries, got " + std::to_string(tokens.size()) +
                                    " tokens");
    std::uint64_t p = 0;
    try {
        p = std::stoull(tokens[0]);
    } catch (const std::exception&) {
        throw std::invalid_argument("order file: bad prime '" + tokens[0] + "'");
    }
    Gram g;
    for (int k = 0; k < 16; ++k) {
        try {
            Rat v(tokens[static_cast<std::size_t>(k + 1)]);
            v.canonicalize();
            g[k / 4][k % 4] = v;
        } catch (const std::exception&) {
            throw std::invalid_argument("order file: bad entry '" + tokens[static_cast<std::size_t>(k + 1)] + "'");
        }
    }
    QuatOrder o(p, g, "file");
    if (single_class(p)) check_mass(o);
    return o;
}

std::vector<std::uint64_t> theta_series(const QuatOrder& order, std::uint64_t upto) {
    const Gram q = fp_decompose(order.gram());
    std::vector<std::uint64_t> counts(upto + 1, 0);
    const Rat bound(Int(static_cast<unsigned long>(upto)));
    Enumerator e{q, bound, counts, {}};
    e.run(3, bound);
    return counts;
}

std::uint64_t theta_count(const QuatOrder& order, std::uint64_t m) { return theta_series(order, m)[m]; }

Rat cyclic_count(const QuatOrder& order, std::uint64_t N, CNorm norm) {
    if (N == 0) throw std::invalid_argument("cyclic_count: N must be positive");
    if (N % order.p() == 0)
        throw std::invalid_argument("cyclic_count: p = " + std::to_string(order.p()) + " divides N = " + std::to_string(N));
    const auto theta = theta_series(order, N);
    Int sum = 0;
    for (std::uint64_t d = 1; d * d <= N; ++d) {
        if (N % (d * d) != 0) continue;
        const int mu = mobius(d);
        if (mu != 0) sum += Int(mu) * Int(static_cast<unsigned long>(theta[N / (d * d)]));
    }
    Rat r(sum * Int(static_cast<unsigned long>(factor_of(norm))), Int(static_cast<unsigned long>(order.unit_count())));
    r.canonicalize();
    return r;
}

Calibration calibrate_cnorm(unsigned reference_c0_3_2) {
    const QuatOrder& o = order_registry(2);
    Calibration c;
    c.reference = reference_c0_3_2;
    c.per_unit_value = cyclic_count(o, 3, CNorm::PerUnit);
    c.printed_value = cyclic_count(o, 3, CNorm::Printed);
    const Rat ref(reference_c0_3_2);
    std::ostringstream r;
    r << "calibration at p = 2, N = 3: theta(3) = " << theta_count(o, 3) << ", #O* = " << o.unit_count()
      << ", C_0(3,2) from Phi_3 mod 2 = " << reference_c0_3_2 << "; c_norm = 1/#O* gives " << c.per_unit_value
      << ", c_norm = 2/#O* gives " << c.printed_value << ". ";
    if (c.per_unit_value == ref) {
        c.chosen = CNorm::PerUnit;
        c.consistent = true;
        r << "Using c_norm = 1/#O*; the factor 2 over-counts by exactly 2.";
    } else if (c.printed_value == ref) {
        c.chosen = CNorm::Printed;
        c.consistent = true;
        r << "Using c_norm = 2/#O*.";
    } else {
        r << "Neither normalization matches; keeping c_norm = 1/#O*.";
    }
    c.report = r.str();
    return c;
}

}  // namespace mpv
