#include "mpv/local.hpp"

#include <sstream>

namespace mpv {

LocalRing::LocalRing(std::uint64_t p, std::vector<Int> f) : p_(p), f_(std::move(f)) {
    if (!is_prime(p_)) throw ArithError("LocalRing: " + std::to_string(p_) + " is not prime");
    if (!is_eisenstein(p_, f_)) throw ArithError("LocalRing: modulus is not Eisenstein at " + std::to_string(p_));
}

bool LocalRing::is_eisenstein(std::uint64_t p, const std::vector<Int>& f) {
    if (f.size() < 2 || f.back() != 1) return false;
    Int zp(std::to_string(p));
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
        if (!mpz_divisible_p(f[i].get_mpz_t(), zp.get_mpz_t())) return false;
    Int p2 = zp * zp;
    return !mpz_divisible_p(f[0].get_mpz_t(), p2.get_mpz_t());
}

LocalRingPtr LocalRing::trivial(std::uint64_t p) {
    return std::make_shared<const LocalRing>(p, std::vector<Int>{-Int(std::to_string(p)), 1});
}

LocalRingPtr LocalRing::make(std::uint64_t p, std::vector<Int> f) {
    return std::make_shared<const LocalRing>(p, std::move(f));
}

std::string LocalRing::str() const {
    std::ostringstream os;
    os << "Z_" << p_ << "[t]/(";
    bool first = true;
    for (std::size_t i = f_.size(); i-- > 0;) {
        if (f_[i] == 0) continue;
        if (!first) os << (f_[i] < 0 ? " - " : " + ");
        else if (f_[i] < 0) os << "-";
        Int a = abs(f_[i]);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) os << (a != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    os << ")";
    return os.str();
}

LocalElement::LocalElement(LocalRingPtr ring) : ring_(std::move(ring)) { coords_.assign(ring_->e(), Rat(0)); }

LocalElement::LocalElement(LocalRingPtr ring, const Rat& scalar) : LocalElement(std::move(ring)) { coords_[0] = scalar; }

LocalElement::LocalElement(LocalRingPtr ring, std::vector<Rat> coords) : ring_(std::move(ring)), coords_(std::move(coords)) {
    if (coords_.size() != ring_->e()) throw ArithError("LocalElement: expected " + std::to_string(ring_->e()) + " coordinates");
    for (auto& c : coords_) c.canonicalize();
}

LocalElement LocalElement::uniformizer(LocalRingPtr ring) {
    LocalElement t(ring);
    if (ring->e() == 1) {
        // theta is the root of x - p, i.e. p itself
        t.coords_[0] = -Rat(ring->modulus()[0]);
    } else {
        t.coords_[1] = 1;
    }
    return t;
}

bool LocalElement::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

Valuation LocalElement::valuation() const {
    Valuation best = Valuation::infinity();
    const std::int64_t e = ring_->e();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        Valuation v(e * vp(coords_[i], ring_->p()).value() + static_cast<std::int64_t>(i));
        if (v < best) best = v;
    }
    return best;
}

void LocalElement::require_same_ring(const LocalElement& o) const {
    if (!ring_ || !o.ring_ || !(ring_ == o.ring_ || *ring_ == *o.ring_))
        throw ArithError("LocalElement: operands belong to different rings");
}

LocalElement LocalElement::operator-() const {
    LocalElement r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

LocalElement& LocalElement::operator+=(const LocalElement& b) {
    require_same_ring(b);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += b.coords_[i];
    return *this;
}

LocalElement operator+(const LocalElement& a, const LocalElement& b) {
    LocalElement r = a;
    r += b;
    return r;
}

LocalElement operator-(const LocalElement& a, const LocalElement& b) { return a + (-b); }

LocalElement operator*(const LocalElement& a, const LocalElement& b) {
    a.require_same_ring(b);
    const std::size_t e = a.coords_.size();
    const auto& f = a.ring_->modulus();
    std::vector<Rat> prod(2 * e - 1, Rat(0));
    for (std::size_t i = 0; i < e; ++i) {
        if (a.coords_[i] == 0) continue;
        for (std::size_t k = 0; k < e; ++k)
            if (b.coords_[k] != 0) prod[i + k] += a.coords_[i] * b.coords_[k];
    }
    // reduce modulo the monic f: theta^e = -sum_{i<e} f_i theta^i
    for (std::size_t d = prod.size(); d-- > e;) {
        if (prod[d] == 0) continue;
        Rat c = prod[d];
        prod[d] = 0;
        for (std::size_t i = 0; i < e; ++i)
            if (f[i] != 0) prod[d - e + i] -= c * Rat(f[i]);
    }
    prod.resize(e);
    LocalElement r(a.ring_);
    r.coords_ = std::move(prod);
    return r;
}

LocalElement operator*(const Rat& c, const LocalElement& a) {
    LocalElement r = a;
    for (auto& x : r.coords_) x *= c;
    return r;
}

LocalElement& LocalElement::operator*=(const LocalElement& b) {
    *this = *this * b;
    return *this;
}

LocalElement LocalElement::pow(unsigned k) const {
    LocalElement result(ring_, Rat(1));
    LocalElement base = *this;
    while (k > 0) {
        if (k & 1U) result *= base;
        k >>= 1U;
        if (k > 0) base *= base;
    }
    return result;
}

LocalElement LocalElement::divided_by(const Rat& c) const {
    if (c == 0) throw ArithError("LocalElement: division by zero");
    LocalElement r = *this;
    for (auto& x : r.coords_) x /= c;
    return r;
}

bool operator==(const LocalElement& a, const LocalElement& b) {
    a.require_same_ring(b);
    return a.coords_ == b.coords_;
}

std::string LocalElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        if (!first) os << " + ";
        os << coords_[i].get_str();
        if (i > 0) os << "*t" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace mpv
