#include "zh/strata.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "zh/arith.hpp"
#include "zh/errors.hpp"
#include "zh/ff.hpp"

namespace zh::strata {

namespace {

// ---- polynomial parser: expr := ['-'] term (('+'|'-') term)*,
//      term := factor ('*' factor)*, factor := base ['^' uint],
//      base := uint | 'x'uint | '(' expr ')'

using MonoMap = std::map<std::vector<unsigned>, i64>;

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    unsigned nvars;
    int depth = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw domain_error("polynomial parse error at position " + std::to_string(pos) + ": " + what);
    }

    u64 integer() {
        skip();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected an integer");
        u64 v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<u64>(text[pos] - '0');
            if (v > (1ull << 62)) fail("integer literal too large");
            ++pos;
        }
        return v;
    }

    MonoMap constant(i64 c) {
        MonoMap m;
        if (c) m[std::vector<unsigned>(nvars, 0)] = c;
        return m;
    }

    static MonoMap add(MonoMap a, const MonoMap& b, i64 sign) {
        for (const auto& [e, c] : b) {
            a[e] += sign * c;
            if (a[e] == 0) a.erase(e);
        }
        return a;
    }

    static MonoMap mul(const MonoMap& a, const MonoMap& b) {
        MonoMap r;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                std::vector<unsigned> e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r[e] += ca * cb;
                if (r[e] == 0) r.erase(e);
            }
        return r;
    }

    MonoMap base() {
        skip();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            if (++depth > 4) fail("parentheses nested deeper than 4");
            ++pos;
            MonoMap e = expr();
            if (!eat(')')) fail("missing )");
            --depth;
            return e;
        }
        if (c == 'x') {
            ++pos;
            u64 idx = integer();
            if (idx >= nvars) fail("variable index out of range");
            MonoMap m;
            std::vector<unsigned> e(nvars, 0);
            e[idx] = 1;
            m[e] = 1;
            return m;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return constant(static_cast<i64>(integer()));
        fail("expected a number, a variable or (");
    }

    MonoMap factor() {
        MonoMap b = base();
        skip();
        if (eat('^')) {
            u64 e = integer();
            if (e > 64) fail("exponent too large");
            MonoMap r = constant(1);
            for (u64 i = 0; i < e; ++i) r = mul(r, b);
            return r;
        }
        return b;
    }

    MonoMap term() {
        MonoMap r = factor();
        while (eat('*')) r = mul(r, factor());
        return r;
    }

    MonoMap expr() {
        i64 sign = eat('-') ? -1 : 1;
        MonoMap r = add(MonoMap{}, term(), sign);
        while (true) {
            skip();
            if (eat('+'))
                r = add(std::move(r), term(), 1);
            else if (eat('-'))
                r = add(std::move(r), term(), -1);
            else
                break;
        }
        return r;
    }
};

} // namespace

Polynomial parse_polynomial(const std::string& text, unsigned nvars) {
    Parser parser{text, 0, nvars, 0};
    MonoMap m = parser.expr();
    parser.skip();
    if (parser.pos != text.size()) parser.fail("trailing input");

    Polynomial poly;
    poly.nvars = nvars;
    bool first = true;
    for (const auto& [e, c] : m) {
        unsigned deg = std::accumulate(e.begin(), e.end(), 0u);
        if (first) {
            poly.degree = deg;
            first = false;
        } else if (deg != poly.degree) {
            throw domain_error("polynomial is not homogeneous: " + text);
        }
        poly.terms.push_back({c, e});
    }
    return poly;
}

OpenSubschemeSpec parse_subscheme(std::istream& in) {
    OpenSubschemeSpec spec;
    std::string line;
    // first non-comment line: N
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        long n;
        if (ls >> n) {
            if (n < 0) throw domain_error("subscheme spec: N must be nonnegative");
            spec.N = static_cast<unsigned>(n);
            break;
        }
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            throw domain_error("subscheme spec: first line must be the ambient dimension N");
    }
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        spec.forbidden.push_back(parse_polynomial(line, spec.N + 1));
    }
    return spec;
}

OpenSubschemeSpec parse_subscheme_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open subscheme spec file: " + path);
    return parse_subscheme(in);
}

std::vector<OrderTuple> enumerate_Jn(u64 n, unsigned M) {
    if (n == 0 || M == 0) throw domain_error("enumerate_Jn: need n >= 1 and M >= 1");
    std::vector<u64> divs = arith::divisors(arith::factorize(n));
    std::vector<OrderTuple> out;
    std::vector<std::size_t> idx(M, 0);
    while (true) {
        u64 l = 1;
        for (std::size_t i = 0; i < M; ++i) l = std::lcm(l, divs[idx[i]]);
        if (l == n) {
            OrderTuple t;
            t.n = n;
            for (std::size_t i = 0; i < M; ++i) t.j.push_back(divs[idx[i]]);
            out.push_back(std::move(t));
        }
        std::size_t i = M;
        bool done = true;
        while (i-- > 0) {
            if (++idx[i] < divs.size()) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
        if (done) break;
    }
    return out;
}

namespace {

std::vector<std::vector<u64>> unit_tuples(const std::vector<u64>& j) {
    std::vector<std::vector<u64>> units_per(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        for (u64 a = 0; a < std::max<u64>(j[i], 1); ++a)
            if (std::gcd(a, j[i]) == 1 || j[i] == 1) units_per[i].push_back(j[i] == 1 ? 0 : a);
    std::vector<std::vector<u64>> tuples;
    std::vector<std::size_t> idx(j.size(), 0);
    while (true) {
        std::vector<u64> t(j.size());
        for (std::size_t i = 0; i < j.size(); ++i) t[i] = units_per[i][idx[i]];
        tuples.push_back(std::move(t));
        std::size_t i = j.size();
        bool done = true;
        while (i-- > 0) {
            if (++idx[i] < units_per[i].size()) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
        if (done) break;
    }
    return tuples;
}

void validate_tuple(const OrderTuple& j) {
    if (j.j.empty()) throw domain_error("order tuple must be nonempty");
    u64 l = 1;
    for (u64 ji : j.j) {
        if (ji == 0 || j.n % ji) throw domain_error("order tuple entries must divide n");
        l = std::lcm(l, ji);
    }
    if (l != j.n) throw domain_error("order tuple lcm must equal n");
}

} // namespace

std::vector<u64> DiagonalOrbitDecomposition::orbit_sizes() const {
    std::vector<u64> s;
    for (const auto& o : orbits) s.push_back(o.size());
    return s;
}

DiagonalOrbitDecomposition diagonal_orbits(const OrderTuple& j) {
    validate_tuple(j);
    DiagonalOrbitDecomposition dec;
    dec.tuple = j;
    dec.n = j.n;

    std::vector<std::vector<u64>> tuples = unit_tuples(j.j);
    std::vector<u64> units;
    for (u64 u = 0; u < std::max<u64>(j.n, 1); ++u)
        if (std::gcd(u, j.n) == 1 || j.n == 1) units.push_back(j.n == 1 ? 0 : u);

    u64 phi_n = arith::euler_phi(j.n);
    std::map<std::vector<u64>, bool> seen;
    for (const auto& t : tuples) seen[t] = false;
    for (const auto& t : tuples) {
        if (seen[t]) continue;
        std::vector<std::vector<u64>> orbit;
        for (u64 u : units) {
            std::vector<u64> s(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                s[i] = j.j[i] == 1 ? 0 : (u % j.j[i]) * t[i] % j.j[i];
            orbit.push_back(std::move(s));
        }
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        if (orbit.size() != phi_n)
            throw inconsistency_error("diagonal_orbits: stabilizer is not trivial");
        for (const auto& s : orbit) seen[s] = true;
        dec.orbits.push_back(std::move(orbit));
    }
    // total must be the full tuple count
    u64 total = 0;
    for (const auto& o : dec.orbits) total += o.size();
    if (total != tuples.size())
        throw inconsistency_error("diagonal_orbits: orbits do not partition the tuples");
    std::sort(dec.orbits.begin(), dec.orbits.end());
    return dec;
}

u64 frobenius_orbit_degree(const OrderTuple& j, u64 p) {
    validate_tuple(j);
    if (!arith::is_prime(p)) throw domain_error("frobenius_orbit_degree: p must be prime");
    if (j.n > 1 && j.n % p == 0)
        throw domain_error("frobenius_orbit_degree: p divides lcm(j)");
    u64 f = arith::multiplicative_order(p, j.n);

    // spot-check by enumeration while the tuple set is small
    u64 count = 1;
    bool small = true;
    for (u64 ji : j.j) {
        count *= arith::euler_phi(ji);
        if (count > 100000) {
            small = false;
            break;
        }
    }
    if (small) {
        for (const auto& t : unit_tuples(j.j)) {
            std::vector<u64> s = t;
            u64 steps = 0;
            do {
                for (std::size_t i = 0; i < s.size(); ++i)
                    s[i] = j.j[i] == 1 ? 0 : s[i] * (p % j.j[i]) % j.j[i];
                ++steps;
            } while (s != t);
            if (steps != f)
                throw inconsistency_error("frobenius_orbit_degree: orbit of unexpected size");
        }
    }
    return f;
}

namespace {

using ff::Field;
using Elem = ff::Field::Elem;

Elem eval_poly(const Polynomial& poly, const Field& F, const std::vector<Elem>& coords) {
    Elem acc = Field::kZero;
    for (const Monomial& m : poly.terms) {
        Elem v = F.from_int(m.coeff);
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (m.exponents[i]) v = F.mul(v, F.pow(coords[i], m.exponents[i]));
        acc = F.add(acc, v);
    }
    return acc;
}

bool in_U(const OpenSubschemeSpec& U, const Field& F, const std::vector<Elem>& coords) {
    for (const Polynomial& f : U.forbidden)
        if (eval_poly(f, F, coords) != Field::kZero) return true;
    return false;
}

void check_budget(const OpenSubschemeSpec& U, u64 p, unsigned d) {
    unsigned __int128 q = 1;
    for (unsigned i = 0; i < d; ++i) q *= p;
    unsigned __int128 cost = 1;
    for (unsigned i = 0; i <= U.N; ++i) {
        cost *= q;
        if (cost > kEnumerationBudget)
            throw resource_error("strata: (p^d)^(N+1) exceeds the enumeration budget");
    }
}

// Iterate all assignments of values in [0, range) to `free_count` slots.
template <typename Fn>
void for_each_assignment(u64 range, unsigned free_count, Fn&& fn) {
    std::vector<u64> vals(free_count, 0);
    while (true) {
        fn(static_cast<const std::vector<u64>&>(vals));
        unsigned i = free_count;
        bool done = true;
        while (i-- > 0) {
            if (++vals[i] < range) {
                done = false;
                break;
            }
            vals[i] = 0;
        }
        if (free_count == 0 || done) break;
    }
}

// value index in [0, q) -> field element (0 first, then g^0, g^1, ...)
Elem nth_element(const Field& F, u64 i) {
    return i == 0 ? Field::kZero : F.exp_of(i - 1);
}

} // namespace

u64 count_points(const OpenSubschemeSpec& U, u64 p, unsigned d) {
    if (!arith::is_prime(p) || d == 0) throw domain_error("count_points: need p prime, d >= 1");
    check_budget(U, p, d);
    auto Fp = Field::shared(p, d);
    const Field& F = *Fp;
    u64 q = F.q();
    u64 count = 0;
    // representatives: leading 1 at position k, zeros before, free after
    for (unsigned k = 0; k <= U.N; ++k) {
        std::vector<Elem> coords(U.N + 1, Field::kZero);
        coords[k] = F.one();
        for_each_assignment(q, U.N - k, [&](const std::vector<u64>& vals) {
            for (unsigned i = 0; i < vals.size(); ++i) coords[k + 1 + i] = nth_element(F, vals[i]);
            if (in_U(U, F, coords)) ++count;
        });
    }
    return count;
}

StratificationCertificate verify_stratification(const OpenSubschemeSpec& U, u64 p, unsigned d) {
    if (!arith::is_prime(p) || d == 0)
        throw domain_error("verify_stratification: need p prime, d >= 1");
    check_budget(U, p, d);
    StratificationCertificate cert;
    cert.p = p;
    cert.d = d;
    cert.direct_count = count_points(U, p, d);

    auto Fp = Field::shared(p, d);
    const Field& F = *Fp;
    u64 q = F.q();

    // route 2: affine cells split into torus pieces by the zero pattern
    std::map<std::pair<unsigned, std::vector<char>>, u64> cell_counts;
    // route 3: torsion-order tuples of the unit coordinates
    std::map<std::vector<u64>, u64> tuple_counts;

    for (unsigned k = 0; k <= U.N; ++k) {
        unsigned M = U.N - k; // affine cell dimension
        std::vector<char> mask(M, 0);
        while (true) { // all zero/unit patterns
            unsigned units = 0;
            for (char c : mask) units += c;
            std::vector<Elem> coords(U.N + 1, Field::kZero);
            coords[k] = F.one();
            u64 piece = 0;
            std::map<std::vector<u64>, u64> piece_tuples;
            for_each_assignment(q - 1, units, [&](const std::vector<u64>& vals) {
                // nonzero coordinates run over g^0..g^{q-2}
                std::vector<u64> orders;
                unsigned vi = 0;
                for (unsigned i = 0; i < M; ++i) {
                    if (mask[i]) {
                        Elem x = F.exp_of(vals[vi++]);
                        coords[k + 1 + i] = x;
                        orders.push_back(F.element_order(x));
                    } else {
                        coords[k + 1 + i] = Field::kZero;
                    }
                }
                if (in_U(U, F, coords)) {
                    ++piece;
                    ++piece_tuples[orders];
                }
            });
            cell_counts[{M, mask}] += piece;
            for (auto& [orders, c] : piece_tuples) tuple_counts[orders] += c;

            unsigned i = M;
            bool done = true;
            while (i-- > 0) {
                if (++mask[i] <= 1) {
                    done = false;
                    break;
                }
                mask[i] = 0;
            }
            if (M == 0 || done) break;
        }
    }

    for (auto& [key, c] : cell_counts) {
        cert.cells.push_back({key.first, key.second, c});
        cert.cell_sum += c;
    }
    for (auto& [orders, c] : tuple_counts) {
        u64 n = 1;
        for (u64 o : orders) n = std::lcm(n, o);
        cert.tuples.push_back({static_cast<unsigned>(orders.size()), orders, n, c});
        cert.order_tuple_sum += c;
    }
    cert.pass = cert.direct_count == cert.cell_sum && cert.direct_count == cert.order_tuple_sum;
    return cert;
}

Eq30Certificate verify_eq30_local(const OpenSubschemeSpec& U, const OrderTuple& j, u64 p) {
    validate_tuple(j);
    if (!arith::is_prime(p)) throw domain_error("verify_eq30_local: p must be prime");
    if (j.n > 1 && j.n % p == 0) throw domain_error("verify_eq30_local: p divides lcm(j)");
    if (j.j.size() > U.N)
        throw domain_error("verify_eq30_local: tuple longer than the ambient dimension");

    Eq30Certificate cert;
    cert.tuple = j;
    cert.p = p;
    cert.f = arith::multiplicative_order(p, j.n);

    auto Fp = Field::shared(p, static_cast<unsigned>(cert.f)); // may throw resource_error
    const Field& F = *Fp;
    u64 q = F.q();
    if ((q - 1) % j.n)
        throw inconsistency_error("verify_eq30_local: order-n subgroup missing from F_{p^f}");
    Elem zeta = F.exp_of((q - 1) / j.n); // fixed generator of the order-n subgroup

    unsigned M = static_cast<unsigned>(j.j.size());
    auto tuple_to_point = [&](const std::vector<u64>& t) {
        std::vector<Elem> coords(U.N + 1, Field::kZero);
        coords[0] = F.one();
        for (unsigned i = 0; i < M; ++i)
            coords[1 + i] = F.pow(zeta, (j.n / j.j[i]) * t[i] % j.n);
        return coords;
    };

    DiagonalOrbitDecomposition dec = diagonal_orbits(j);
    u64 member_total = 0;
    for (const auto& orbit : dec.orbits) {
        // partition the orbit into <p>-orbits; check size f and membership constancy
        std::map<std::vector<u64>, bool> remaining;
        for (const auto& t : orbit) remaining[t] = true;
        u64 members = 0;
        while (!remaining.empty()) {
            std::vector<u64> start = remaining.begin()->first;
            std::vector<u64> s = start;
            bool member = in_U(U, F, tuple_to_point(s));
            u64 size = 0;
            do {
                if (!remaining.count(s))
                    throw inconsistency_error("verify_eq30_local: Frobenius leaves the orbit");
                remaining.erase(s);
                ++size;
                if (in_U(U, F, tuple_to_point(s)) != member)
                    throw inconsistency_error(
                        "verify_eq30_local: U-membership not constant on a Frobenius orbit");
                for (unsigned i = 0; i < M; ++i)
                    s[i] = j.j[i] == 1 ? 0 : s[i] * (p % j.j[i]) % j.j[i];
            } while (s != start);
            if (size != cert.f)
                throw inconsistency_error("verify_eq30_local: Frobenius orbit of unexpected size");
            if (member) members += size;
        }
        member_total += members;
        cert.orbits.push_back(
            {members, localzeta::inverse_one_minus_tf_pow_factor(
                          p, static_cast<unsigned>(cert.f), members / cert.f)});
    }

    // independent stratum count: points (1 : x_1 : ... : x_M : 0...) with
    // ord(x_i) = j_i, scanned from the field itself
    std::vector<std::vector<Elem>> elems_of_order(M);
    for (unsigned i = 0; i < M; ++i)
        for (u64 k = 0; k < q - 1; ++k) {
            Elem x = F.exp_of(k);
            if (F.element_order(x) == j.j[i]) elems_of_order[i].push_back(x);
        }
    std::vector<std::size_t> idx(M, 0);
    u64 stratum = 0;
    while (true) {
        std::vector<Elem> coords(U.N + 1, Field::kZero);
        coords[0] = F.one();
        for (unsigned i = 0; i < M; ++i) coords[1 + i] = elems_of_order[i][idx[i]];
        if (in_U(U, F, coords)) ++stratum;
        std::size_t i = M;
        bool done = true;
        while (i-- > 0) {
            if (++idx[i] < elems_of_order[i].size()) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
        if (done) break;
    }
    cert.stratum_count = stratum;
    cert.pass = member_total == stratum;
    return cert;
}

} // namespace zh::strata
