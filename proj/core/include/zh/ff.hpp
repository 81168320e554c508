#ifndef ZH_FF_HPP
#define ZH_FF_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace zh::ff {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Cardinality cap for table-backed fields; large enough for every
/// enumeration budget in this project.
inline constexpr u64 kMaxCardinality = 1u << 21;

/// F_{p^deg} with full log/exp/Zech tables. Elements are u32 codes: the
/// code of sum a_i x^i is sum a_i p^i, where x is the class of the variable
/// modulo the deterministically chosen irreducible polynomial (the monic
/// one whose coefficient tuple (c_{deg-1},...,c_0) is smallest as a base-p
/// number). Instances are immutable after construction and safe to share
/// across threads.
///
/// Hot loops should use the log-domain representation (see Elem below):
/// multiplication is index addition and addition is one Zech lookup, with
/// no divisions anywhere.
class Field {
public:
    static Field make(u64 p, unsigned deg);

    /// Process-wide cache of constructed fields; table construction is the
    /// dominant cost when many curves share one (p, deg). Synchronized.
    static std::shared_ptr<const Field> shared(u64 p, unsigned deg);

    u64 p() const { return p_; }
    unsigned degree() const { return deg_; }
    u64 q() const { return q_; }

    /// Coefficients c_0..c_{deg-1} of the modulus x^deg + ... + c_0.
    const std::vector<u32>& modulus() const { return modulus_; }

    // ---- log-domain elements: log index in [0, q-1), or kZero ----
    using Elem = u32;
    static constexpr Elem kZero = 0xFFFFFFFFu;

    Elem zero() const { return kZero; }
    Elem one() const { return 0; }
    Elem from_int(long long v) const;

    Elem add(Elem a, Elem b) const {
        if (a == kZero) return b;
        if (b == kZero) return a;
        // g^a + g^b = g^a (1 + g^{b-a})
        u32 d = b >= a ? b - a : b + order_ - a;
        u32 z = zech_[d];
        if (z == kZero) return kZero;
        u32 s = a + z;
        if (s >= order_) s -= order_;
        return s;
    }
    Elem neg(Elem a) const {
        if (a == kZero || p_ == 2) return a;
        u32 s = a + half_;
        if (s >= order_) s -= order_;
        return s;
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a == kZero || b == kZero) return kZero;
        u32 s = a + b;
        if (s >= order_) s -= order_;
        return s;
    }
    Elem inv(Elem a) const;
    Elem pow(Elem a, u64 e) const;
    bool is_square(Elem a) const { return a == kZero || p_ == 2 || a % 2 == 0; }
    Elem sqrt(Elem a) const; // a must be a square
    Elem frobenius(Elem a) const { return pow(a, p_); }

    /// Multiplicative order of a nonzero element.
    u64 element_order(Elem a) const;

    /// Discrete log base the canonical generator; a must be nonzero.
    u64 log(Elem a) const { return a; }
    Elem generator() const { return q_ == 2 ? 0 : 1; }
    Elem exp_of(u64 k) const { return static_cast<Elem>(k % order_); }

    // ---- code-domain view (polynomial coefficients packed base p) ----
    u32 to_code(Elem a) const { return a == kZero ? 0 : exp_[a]; }
    Elem from_code(u32 code) const { return code == 0 ? kZero : log_[code]; }

private:
    Field() = default;

    u64 p_ = 0, q_ = 0;
    u32 order_ = 1; // q - 1
    u32 half_ = 0;  // log of -1
    unsigned deg_ = 0;
    std::vector<u32> modulus_;
    std::vector<u32> log_;  // code -> log, code != 0
    std::vector<u32> exp_;  // log -> code
    std::vector<u32> zech_; // zech_[k] = log(1 + g^k), kZero when it vanishes
};

} // namespace zh::ff

#endif
