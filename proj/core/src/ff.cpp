#include "zh/ff.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "zh/arith.hpp"
#include "zh/errors.hpp"

namespace zh::ff {

namespace {

// Dense polynomial helpers over F_p used only while constructing tables.
using Poly = std::vector<u64>;

int poly_deg(const Poly& a) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i]) return static_cast<int>(i);
    return -1;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, u64 p) {
    std::size_t n = mod.size() - 1; // mod is monic of degree n
    Poly r(a.size() + b.size() + n, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j]) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    for (std::size_t i = r.size(); i-- > n;)
        if (r[i]) {
            u64 t = r[i];
            r[i] = 0;
            for (std::size_t k = 0; k < n; ++k)
                r[i - n + k] = (r[i - n + k] + (p - mod[k]) % p * t) % p;
        }
    r.resize(n);
    return r;
}

Poly poly_powmod(Poly base, u64 e, const Poly& mod, u64 p) {
    std::size_t n = mod.size() - 1;
    Poly r(n, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

Poly poly_powmod_xq(unsigned e, const Poly& mod, u64 p) {
    // x^(p^e) mod `mod`
    std::size_t n = mod.size() - 1;
    Poly x(n, 0);
    if (n == 1)
        x[0] = (p - mod[0]) % p;
    else
        x[1] = 1;
    Poly cur = x;
    for (unsigned step = 0; step < e; ++step) cur = poly_powmod(cur, p, mod, p);
    return cur;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    while (true) {
        int db = poly_deg(b);
        if (db < 0) return a;
        int da = poly_deg(a);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        u64 invb = arith::powmod(b[db], p - 2, p);
        u64 t = a[da] % p * invb % p;
        for (int i = 0; i <= db; ++i) {
            u64 sub = t * b[i] % p;
            a[da - db + i] = (a[da - db + i] + p - sub) % p;
        }
    }
}

bool is_irreducible(const Poly& mod, u64 p) {
    std::size_t n = mod.size() - 1;
    if (n == 1) return true;
    // no factor of degree <= n/2: gcd(x^{p^d} - x, mod) = const for d <= n/2
    for (unsigned d = 1; d <= n / 2; ++d) {
        Poly xq = poly_powmod_xq(d, mod, p);
        if (xq.size() < 2) xq.resize(2, 0);
        xq[1] = (xq[1] + p - 1) % p;
        Poly g = poly_gcd(Poly(mod), xq, p);
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

bool is_one(const Poly& a) { return poly_deg(a) == 0 && a[0] == 1; }

u64 code_of(const Poly& a, u64 p, unsigned deg) {
    u64 out = 0;
    for (unsigned i = deg; i-- > 0;) out = out * p + (i < a.size() ? a[i] : 0);
    return out;
}

Poly poly_of(u64 code, u64 p, unsigned deg) {
    Poly a(deg, 0);
    for (unsigned i = 0; i < deg; ++i) {
        a[i] = code % p;
        code /= p;
    }
    return a;
}

// digit-wise addition of packed base-p codes; build-time only
u32 code_add(u32 a, u32 b, u64 p, unsigned deg) {
    u32 out = 0, mul = 1;
    for (unsigned i = 0; i < deg; ++i) {
        u32 da = a % p, db = b % p;
        a /= static_cast<u32>(p);
        b /= static_cast<u32>(p);
        u32 s = da + db;
        if (s >= p) s -= static_cast<u32>(p);
        out += s * mul;
        mul *= static_cast<u32>(p);
    }
    return out;
}

} // namespace

Field Field::make(u64 p, unsigned deg) {
    if (!arith::is_prime(p) || deg == 0)
        throw domain_error("Field::make: need p prime and deg >= 1");
    u64 q = 1;
    for (unsigned i = 0; i < deg; ++i) {
        q *= p;
        if (q > kMaxCardinality)
            throw resource_error("Field::make: cardinality exceeds table budget");
    }

    Field F;
    F.p_ = p;
    F.deg_ = deg;
    F.q_ = q;
    F.order_ = static_cast<u32>(q - 1);
    F.half_ = p == 2 ? 0 : static_cast<u32>((q - 1) / 2);

    // deterministic modulus: smallest coefficient tuple as a base-p number
    Poly mod(deg + 1, 0);
    mod[deg] = 1;
    for (u64 code = 0;; ++code) {
        u64 c = code;
        for (unsigned i = 0; i < deg; ++i) {
            mod[i] = c % p;
            c /= p;
        }
        if (c != 0) throw inconsistency_error("Field::make: no irreducible polynomial found");
        if (is_irreducible(mod, p)) break;
    }
    F.modulus_.assign(mod.begin(), mod.end() - 1);

    if (q == 2) {
        F.exp_ = {1};
        F.log_ = {0, 0};
        F.zech_ = {kZero}; // 1 + 1 = 0
        return F;
    }

    // generator: smallest code whose order is q - 1, certified through the
    // factored group order
    arith::Factorization qm1 = arith::factorize(q - 1);
    u64 gen_code = 0;
    for (u64 cand = 2; cand < q; ++cand) {
        Poly g = poly_of(cand, p, deg);
        bool primitive = true;
        for (auto [l, e] : qm1.parts)
            if (is_one(poly_powmod(g, (q - 1) / l, mod, p))) {
                primitive = false;
                break;
            }
        if (primitive) {
            gen_code = cand;
            break;
        }
    }
    if (gen_code == 0) throw inconsistency_error("Field::make: no generator found");

    F.exp_.assign(q - 1, 0);
    F.log_.assign(q, 0);
    // allocation-free stepping cur <- cur * g mod f; this loop dominates
    // table construction
    std::vector<u64> cur(deg, 0), g_digits(deg, 0), buf(2 * deg, 0);
    cur[0] = 1;
    {
        Poly g = poly_of(gen_code, p, deg);
        for (unsigned i = 0; i < deg; ++i) g_digits[i] = g[i];
    }
    for (u64 k = 0; k < q - 1; ++k) {
        u64 code = 0;
        for (unsigned i = deg; i-- > 0;) code = code * p + cur[i];
        F.exp_[k] = static_cast<u32>(code);
        F.log_[code] = static_cast<u32>(k);
        // multiply by g
        std::fill(buf.begin(), buf.end(), 0);
        for (unsigned i = 0; i < deg; ++i)
            if (cur[i])
                for (unsigned j = 0; j < deg; ++j)
                    if (g_digits[j]) buf[i + j] = (buf[i + j] + cur[i] * g_digits[j]) % p;
        for (unsigned i = 2 * deg; i-- > deg;)
            if (buf[i]) {
                u64 t = buf[i];
                buf[i] = 0;
                for (unsigned kk = 0; kk < deg; ++kk)
                    buf[i - deg + kk] = (buf[i - deg + kk] + (p - mod[kk]) % p * t) % p;
            }
        for (unsigned i = 0; i < deg; ++i) cur[i] = buf[i];
    }
    bool back_to_one = cur[0] == 1;
    for (unsigned i = 1; i < deg; ++i) back_to_one = back_to_one && cur[i] == 0;
    if (!back_to_one) throw inconsistency_error("Field::make: generator order mismatch");

    // Zech table: zech_[k] = log(1 + g^k)
    F.zech_.assign(q - 1, kZero);
    for (u64 k = 0; k < q - 1; ++k) {
        u32 c = code_add(F.exp_[k], 1, p, deg);
        F.zech_[k] = c == 0 ? kZero : F.log_[c];
    }
    return F;
}

std::shared_ptr<const Field> Field::shared(u64 p, unsigned deg) {
    static std::mutex mu;
    static std::map<std::pair<u64, unsigned>, std::shared_ptr<const Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, deg}];
    if (!slot) slot = std::make_shared<const Field>(make(p, deg));
    return slot;
}

Field::Elem Field::from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return from_code(static_cast<u32>(r));
}

Field::Elem Field::inv(Elem a) const {
    if (a == kZero) throw domain_error("Field::inv: zero has no inverse");
    return a == 0 ? 0 : order_ - a;
}

Field::Elem Field::pow(Elem a, u64 e) const {
    if (a == kZero) return e == 0 ? one() : kZero;
    unsigned __int128 k = static_cast<unsigned __int128>(a) * (e % order_);
    return static_cast<Elem>(static_cast<u64>(k % order_));
}

Field::Elem Field::sqrt(Elem a) const {
    if (a == kZero) return kZero;
    u64 k = a;
    if (p_ == 2) return static_cast<Elem>((k % 2 ? k + order_ : k) / 2 % order_);
    if (k % 2) throw domain_error("Field::sqrt: not a square");
    return static_cast<Elem>(k / 2);
}

u64 Field::element_order(Elem a) const {
    if (a == kZero) throw domain_error("Field::element_order: zero");
    return order_ / std::gcd<u64>(order_, a);
}

} // namespace zh::ff
