#include "zh/characters.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zh/errors.hpp"

namespace zh::characters {

CharacterGroup::CharacterGroup(u64 n) : n_(n), units_(arith::unit_group(n)) {
    if (n == 0) throw domain_error("CharacterGroup: modulus must be positive");
    phi_ = units_.order();
    std::size_t size = n_ == 1 ? 1 : n_;
    dlogs_.assign(size, {});
    is_unit_.assign(size, 0);
    // enumerate all exponent vectors; the products cover each unit exactly once
    std::size_t r = units_.generators.size();
    std::vector<u64> e(r, 0);
    while (true) {
        u64 v = 1 % size;
        for (std::size_t i = 0; i < r; ++i)
            v = arith::mulmod(v, arith::powmod(units_.generators[i].residue, e[i], n_), n_);
        dlogs_[v] = e;
        is_unit_[v] = 1;
        // mixed-radix increment, last coordinate fastest
        std::size_t i = r;
        bool done = true;
        while (i-- > 0) {
            if (++e[i] < units_.generators[i].order) {
                done = false;
                break;
            }
            e[i] = 0;
        }
        if (done) break;
    }
}

const std::vector<u64>* CharacterGroup::dlog(long long a) const {
    if (n_ == 1) return &dlogs_[0];
    long long m = static_cast<long long>(n_);
    long long res = a % m;
    if (res < 0) res += m;
    if (!is_unit_[static_cast<std::size_t>(res)]) return nullptr;
    return &dlogs_[static_cast<std::size_t>(res)];
}

bool DirichletCharacter::is_trivial() const {
    return std::all_of(exponents.begin(), exponents.end(), [](u64 e) { return e == 0; });
}

u64 DirichletCharacter::order() const {
    u64 ord = 1;
    const auto& gens = group->units().generators;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        u64 oi = gens[i].order / std::gcd(gens[i].order, exponents[i]);
        ord = std::lcm(ord, oi);
    }
    return ord;
}

bool DirichletCharacter::rotation(long long a, u64& num, u64& den) const {
    const std::vector<u64>* d = group->dlog(a);
    if (!d) return false;
    const auto& gens = group->units().generators;
    u64 L = 1;
    for (const auto& g : gens) L = std::lcm(L, g.order);
    u64 acc = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        u64 term = arith::mulmod(exponents[i] % gens[i].order, (*d)[i] % gens[i].order, gens[i].order);
        acc = (acc + term * (L / gens[i].order)) % L;
    }
    u64 g = std::gcd(acc, L);
    if (acc == 0) {
        num = 0;
        den = 1;
    } else {
        num = acc / g;
        den = L / g;
    }
    return true;
}

std::vector<DirichletCharacter> characters(u64 n) {
    auto group = std::make_shared<const CharacterGroup>(n);
    const auto& gens = group->units().generators;
    std::size_t r = gens.size();
    std::vector<DirichletCharacter> out;
    out.reserve(group->order());
    std::vector<u64> e(r, 0);
    while (true) {
        out.push_back({group, e});
        std::size_t i = r;
        bool done = true;
        while (i-- > 0) {
            if (++e[i] < gens[i].order) {
                done = false;
                break;
            }
            e[i] = 0;
        }
        if (r == 0 || done) break;
    }
    return out;
}

std::complex<double> chi_value(const DirichletCharacter& chi, long long a) {
    u64 num, den;
    if (!chi.rotation(a, num, den)) return {0.0, 0.0};
    switch (den) {
        case 1: return {1.0, 0.0};
        case 2: return {-1.0, 0.0};
        case 4: return num == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
        default: {
            long double angle = 2.0L * M_PIl * static_cast<long double>(num) / static_cast<long double>(den);
            return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
        }
    }
}

DirichletLocalFactor dirichlet_local_factor(const DirichletCharacter& chi, u64 p) {
    if (!arith::is_prime(p)) throw domain_error("dirichlet_local_factor: p must be prime");
    return {p, chi_value(chi, static_cast<long long>(p))};
}

std::complex<double> dirichlet_L(const DirichletCharacter& chi, double s, u64 prime_bound) {
    if (s <= 1.0) throw domain_error("dirichlet_L: requires s > 1");
    std::complex<long double> prod(1.0L, 0.0L);
    u64 n = chi.modulus();
    for (u64 p : arith::primes_up_to(prime_bound)) {
        if (n > 1 && n % p == 0) continue;
        std::complex<double> cp = chi_value(chi, static_cast<long long>(p));
        long double ps = std::pow(static_cast<long double>(p), static_cast<long double>(-s));
        std::complex<long double> factor =
            1.0L - std::complex<long double>(cp.real(), cp.imag()) * ps;
        prod *= 1.0L / factor;
    }
    return {static_cast<double>(prod.real()), static_cast<double>(prod.imag())};
}

namespace {

// Quad-precision complex, just enough for the eq7 product.
struct Cq {
    __float128 re, im;
};
inline Cq cq_mul(Cq a, Cq b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cq cq_sub(Cq a, Cq b) { return {a.re - b.re, a.im - b.im}; }

// Leja ordering keeps the partial products of (1 - z_k T) well conditioned;
// sequential order along the unit circle loses ~12 digits for f near 100.
std::vector<std::size_t> leja_order(const std::vector<Cq>& z) {
    std::size_t m = z.size();
    std::vector<std::size_t> order;
    std::vector<char> used(m, 0);
    std::vector<long double> logdist(m, 0.0L);
    order.push_back(0);
    used[0] = 1;
    for (std::size_t step = 1; step < m; ++step) {
        std::size_t last = order.back();
        std::size_t best = m;
        long double bestv = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (used[i]) continue;
            long double dre = static_cast<long double>(z[i].re - z[last].re);
            long double dim = static_cast<long double>(z[i].im - z[last].im);
            long double d2 = dre * dre + dim * dim;
            logdist[i] += 0.5L * std::log(std::max(d2, 1e-60L));
            if (best == m || logdist[i] > bestv) {
                best = i;
                bestv = logdist[i];
            }
        }
        order.push_back(best);
        used[best] = 1;
    }
    return order;
}

} // namespace

Eq7Certificate verify_eq7_local(u64 n, u64 p) {
    if (!arith::is_prime(p)) throw domain_error("verify_eq7_local: p must be prime");
    if (n == 0 || (n > 1 && n % p == 0))
        throw domain_error("verify_eq7_local: requires p not dividing n");

    Eq7Certificate cert;
    cert.n = n;
    cert.p = p;
    cert.f = arith::multiplicative_order(p, n);
    u64 phi = arith::euler_phi(n);
    cert.g = phi / cert.f;

    // Multiset of chi(p): collect as multiplicities over the f-th roots.
    std::vector<u64> mult(cert.f, 0);
    for (const auto& chi : characters(n)) {
        u64 num, den;
        bool unit = chi.rotation(static_cast<long long>(p), num, den);
        if (!unit) throw inconsistency_error("verify_eq7_local: p not a unit mod n");
        if (cert.f % den != 0)
            throw inconsistency_error("verify_eq7_local: chi(p) is not an f-th root of unity");
        mult[num * (cert.f / den) % cert.f] += 1;
    }

    std::vector<Cq> roots(cert.f);
    for (u64 k = 0; k < cert.f; ++k) {
        __float128 angle = 2 * M_PIq * static_cast<__float128>(k) / static_cast<__float128>(cert.f);
        roots[k] = {cosq(angle), sinq(angle)};
    }
    roots[0] = {1, 0};
    std::vector<std::size_t> order = leja_order(roots);

    // prod (1 - chi(p) T): round-robin over Leja-ordered roots until all
    // multiplicities are spent.
    std::vector<Cq> c(phi + 1, Cq{0, 0});
    c[0] = {1, 0};
    std::size_t deg = 0;
    std::vector<u64> left = mult;
    u64 remaining = phi;
    while (remaining) {
        for (std::size_t idx : order) {
            if (!left[idx]) continue;
            --left[idx];
            --remaining;
            Cq v = roots[idx];
            for (std::size_t j = deg + 1; j >= 1; --j) c[j] = cq_sub(c[j], cq_mul(v, c[j - 1]));
            ++deg;
        }
    }

    // exact right side (1 - T^f)^g
    std::vector<long double> rhs(phi + 1, 0.0L);
    long double binom = 1.0L;
    for (u64 k = 0; k <= cert.g; ++k) {
        rhs[k * cert.f] = (k % 2) ? -binom : binom;
        binom = binom * static_cast<long double>(cert.g - k) / static_cast<long double>(k + 1);
    }
    long double maxerr = 0.0L;
    for (std::size_t j = 0; j <= phi; ++j) {
        long double dre = static_cast<long double>(c[j].re) - rhs[j];
        long double dim = static_cast<long double>(c[j].im);
        maxerr = std::max(maxerr, std::sqrt(dre * dre + dim * dim));
    }
    cert.max_coeff_error = static_cast<double>(maxerr);
    cert.pass = cert.max_coeff_error <= kEq7Tolerance;
    return cert;
}

} // namespace zh::characters
