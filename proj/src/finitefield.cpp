#include "relay/finitefield.hpp"

#include <stdexcept>

namespace relay::ff {

namespace {

long long mod(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

// Polynomial remainder of a by b over F_p (b monic).
std::vector<long long> poly_rem(std::vector<long long> a, const std::vector<long long>& b,
                                long long p) {
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
        const long long lead = a.back();
        if (lead != 0) {
            const int shift = static_cast<int>(a.size()) - 1 - db;
            for (int j = 0; j <= db; ++j) a[j + shift] = mod(a[j + shift] - lead * b[j], p);
        }
        a.pop_back();
    }
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b,
                                long long p) {
    std::vector<long long> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = mod(c[i + j] + a[i] * b[j], p);
    return c;
}

bool divides(const std::vector<long long>& d, const std::vector<long long>& a, long long p) {
    auto r = poly_rem(a, d, p);
    return r.size() == 1 && r[0] == 0;
}

// Irreducibility by trial division with all monic polynomials of degree <= f/2.
bool is_irreducible(const std::vector<long long>& m, long long p) {
    const int f = static_cast<int>(m.size()) - 1;
    for (int d = 1; 2 * d <= f; ++d) {
        long long count = 1;
        for (int j = 0; j < d; ++j) count *= p;
        for (long long idx = 0; idx < count; ++idx) {
            std::vector<long long> cand(d + 1, 0);
            cand[d] = 1;
            long long rem = idx;
            for (int j = 0; j < d; ++j) {
                cand[j] = rem % p;
                rem /= p;
            }
            if (divides(cand, m, p)) return false;
        }
    }
    return true;
}

}  // namespace

PrimePowerField::PrimePowerField(long long p, int f) : p_(p), f_(f) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("characteristic must be odd");
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw std::invalid_argument("characteristic not prime");
    if (f < 1) throw std::invalid_argument("extension degree must be positive");
    q_ = 1;
    for (int j = 0; j < f; ++j) q_ *= p;

    if (f == 1) {
        modulus_ = {0, 1};  // t
        return;
    }
    if (p == 11 && f == 3) {
        modulus_ = {mod(-4, 11), mod(-1, 11), 0, 1};  // t^3 - t - 4
        if (!is_irreducible(modulus_, p_)) throw std::logic_error("fixed modulus reducible");
        return;
    }
    long long count = 1;
    for (int j = 0; j < f; ++j) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
        std::vector<long long> cand(f + 1, 0);
        cand[f] = 1;
        long long rem = idx;
        for (int j = 0; j < f; ++j) {
            cand[j] = rem % p;
            rem /= p;
        }
        if (is_irreducible(cand, p)) {
            modulus_ = cand;
            return;
        }
    }
    throw std::logic_error("no irreducible modulus found");  // unreachable
}

PrimePowerField::Elem PrimePowerField::from_integer(long long n) const {
    Elem e(f_, 0);
    e[0] = mod(n, p_);
    return e;
}

PrimePowerField::Elem PrimePowerField::mul(const Elem& a, const Elem& b) const {
    auto r = poly_rem(poly_mul(a, b, p_), modulus_, p_);
    r.resize(f_, 0);
    return r;
}

PrimePowerField::Elem PrimePowerField::pow(Elem a, long long e) const {
    Elem r = from_integer(1);
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool PrimePowerField::is_one(const Elem& a) const {
    if (a[0] != 1) return false;
    for (int j = 1; j < f_; ++j)
        if (a[j] != 0) return false;
    return true;
}

bool PrimePowerField::is_zero(const Elem& a) const {
    for (long long c : a)
        if (c != 0) return false;
    return true;
}

std::vector<PrimePowerField::Elem> PrimePowerField::elements() const {
    std::vector<Elem> out;
    out.reserve(q_);
    for (long long idx = 0; idx < q_; ++idx) {
        Elem e(f_, 0);
        long long rem = idx;
        for (int j = 0; j < f_; ++j) {
            e[j] = rem % p_;
            rem /= p_;
        }
        out.push_back(std::move(e));
    }
    return out;
}

bool residue_nonsquare_witness(long long q, long long gamma) {
    if (q < 3) throw std::invalid_argument("q must be an odd prime power >= 3");
    long long p = -1;
    for (long long d = 3; d * d <= q; d += 2)
        if (q % d == 0) { p = d; break; }
    if (p < 0) p = q;  // q prime
    int f = 0;
    long long rest = q;
    while (rest > 1) {
        if (rest % p != 0) throw std::invalid_argument("q is not a prime power");
        rest /= p;
        ++f;
    }
    if (p % 2 == 0) throw std::invalid_argument("q must be odd");
    long long g = ((gamma % p) + p) % p;
    if (g == 0) throw std::invalid_argument("gamma is zero in the residue field");

    PrimePowerField fq(p, f);
    auto r = fq.pow(fq.from_integer(g), (q - 1) / 2);
    return !fq.is_one(r);
}

}  // namespace relay::ff
