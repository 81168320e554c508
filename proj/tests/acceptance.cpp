// Acceptance suite: one check per shipped criterion, each printing a single
// [PASS]/[FAIL] line. Run with no arguments for all criteria, or with a
// criterion number. Exit status 0 iff everything passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zh/arith.hpp"
#include "zh/characters.hpp"
#include "zh/elliptic.hpp"
#include "zh/gm.hpp"
#include "zh/localzeta.hpp"
#include "zh/strata.hpp"

namespace {

using zh::arith::u64;

struct Outcome {
    bool pass = true;
    std::string note;

    void fail(const std::string& why) {
        pass = false;
        if (note.empty()) note = why;
    }
};

std::vector<std::pair<long long, long long>> corpus() {
    std::ifstream in(std::string(ZH_TEST_DATA_DIR) + "/curves.txt");
    std::vector<std::pair<long long, long long>> curves;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        long long a, b;
        if (ls >> a >> b) curves.emplace_back(a, b);
    }
    return curves;
}

// independent series oracle used by criterion 4 (not gm::zeta_series)
double zeta_by_summation(double s) {
    double sum = 0.0;
    const u64 terms = 1'000'000;
    for (u64 m = terms; m >= 1; --m) sum += std::pow(static_cast<double>(m), -s);
    double M = static_cast<double>(terms);
    return sum + std::pow(M, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(M, -s); // tail bound
}

// 1. G_m local partition: partition sums and degree-wise closed points,
//    all primes p <= 50, exponents through 6. Zero tolerance.
Outcome criterion1() {
    Outcome out;
    for (u64 p : zh::arith::primes_up_to(50)) {
        auto cert = zh::gm::verify_gm_local_partition(p, 6);
        if (!cert.pass) out.fail("partition mismatch at p = " + std::to_string(p));
    }
    return out;
}

// 2. character regrouping, all n <= 100 and p <= 100 with p not dividing n,
//    coefficientwise within 1e-9
Outcome criterion2() {
    Outcome out;
    for (u64 n = 1; n <= 100; ++n)
        for (u64 p : zh::arith::primes_up_to(100)) {
            if (n > 1 && n % p == 0) continue;
            auto cert = zh::characters::verify_eq7_local(n, p);
            if (!cert.pass || cert.max_coeff_error > 1e-9)
                out.fail("regrouping off at n = " + std::to_string(n) +
                         ", p = " + std::to_string(p));
        }
    return out;
}

// 3. exact local factorization of the G_m zeta factor through degree 4,
//    all p <= 13, integer coefficients
Outcome criterion3() {
    Outcome out;
    for (u64 p : zh::arith::primes_up_to(13)) {
        u64 n_max = p * p * p * p - 1;
        auto cert = zh::gm::verify_eq25_local(p, 4, n_max);
        if (!cert.pass) out.fail("series mismatch at p = " + std::to_string(p));
    }
    return out;
}

// 4. numeric truncation of the global identity at s = 3: strictly shrinking
//    gap from n_max 100 to 200, and the per-prime regrouping within 1e-3 of
//    the independently summed target
Outcome criterion4() {
    Outcome out;
    double target = zeta_by_summation(2.0) / zeta_by_summation(3.0);
    auto rep = zh::gm::verify_eq8_global(3.0, 200, 10'000);
    double gap200 = std::abs(rep.rhs - target);
    double gap100 = std::abs(rep.rhs_half - target);
    if (!(gap200 < gap100)) out.fail("truncation gap did not shrink from N=100 to N=200");
    if (!(std::abs(rep.regrouped - target) < 1e-3)) out.fail("regrouped product off by >= 1e-3");
    char buf[160];
    std::snprintf(buf, sizeof buf, "target %.9f, gap %.2e -> %.2e, regrouped gap %.2e",
                  target, gap100, gap200, std::abs(rep.regrouped - target));
    out.note = buf;
    return out;
}

// 5. elliptic corpus: enumeration agrees with the recurrence at every good
//    p <= 50 and p^nu <= 1e6; Hasse and positivity hold; the order
//    partition and every l-part identity are exact
Outcome criterion5() {
    Outcome out;
    auto curves = corpus();
    if (curves.size() < 10) out.fail("corpus has fewer than 10 curves");
    bool has11 = false, hasm10 = false;
    for (auto [a, b] : curves) {
        has11 = has11 || (a == 1 && b == 1);
        hasm10 = hasm10 || (a == -1 && b == 0);
    }
    if (!has11 || !hasm10) out.fail("corpus must contain (1,1) and (-1,0)");

    for (auto [a, b] : curves) {
        zh::elliptic::Curve curve = zh::elliptic::make_curve(a, b);
        for (u64 p : zh::arith::primes_up_to(50)) {
            if (!zh::elliptic::good_reduction(curve, p)) continue;
            zh::elliptic::FrobeniusData fd = zh::elliptic::frobenius_data(curve, p);
            if (static_cast<double>(fd.a_p) * fd.a_p > 4.0 * static_cast<double>(p))
                out.fail("Hasse bound violated");
            for (unsigned nu = 1;; ++nu) {
                u64 q;
                {
                    unsigned __int128 qq = 1;
                    for (unsigned i = 0; i < nu; ++i) qq *= p;
                    if (qq > zh::elliptic::kEnumerationBudget) break;
                    q = static_cast<u64>(qq);
                }
                (void)q;
                if (fd.point_count(nu) <= 0) out.fail("positivity violated");
                u64 enumerated = zh::elliptic::count_points_enum(curve, p, nu);
                if (fd.point_count(nu) != enumerated)
                    out.fail("enumeration vs recurrence mismatch at (" + std::to_string(a) +
                             "," + std::to_string(b) + ") p=" + std::to_string(p) +
                             " nu=" + std::to_string(nu));
                auto cert = zh::elliptic::verify_eq4_local(curve, p, nu);
                if (!cert.pass)
                    out.fail("order partition / l-part failure at (" + std::to_string(a) + "," +
                             std::to_string(b) + ") p=" + std::to_string(p) +
                             " nu=" + std::to_string(nu));
            }
        }
    }
    return out;
}

// 6. exact per-prime factorization of the local zeta factor through degree
//    3 for the corpus at good p <= 20, including p | n orders
Outcome criterion6() {
    Outcome out;
    for (auto [a, b] : corpus()) {
        zh::elliptic::Curve curve = zh::elliptic::make_curve(a, b);
        for (u64 p : zh::arith::primes_up_to(20)) {
            if (!zh::elliptic::good_reduction(curve, p)) continue;
            auto cert = zh::elliptic::verify_eq13_local(curve, p, 3);
            if (!cert.pass)
                out.fail("local factorization failed at (" + std::to_string(a) + "," +
                         std::to_string(b) + ") p=" + std::to_string(p));
        }
    }
    return out;
}

// 7. stratification and orbit checks for the subscheme corpus, p <= 13,
//    d <= 2
Outcome criterion7() {
    Outcome out;
    const char* files[] = {"p1_full.txt", "p1_gm.txt",    "p2_line.txt",
                           "p2_fermat.txt", "p2_torus.txt", "p2_mixed.txt"};
    for (const char* name : files) {
        auto spec = zh::strata::parse_subscheme_file(std::string(ZH_TEST_DATA_DIR) + "/" + name);
        for (u64 p : zh::arith::primes_up_to(13))
            for (unsigned d = 1; d <= 2; ++d) {
                auto cert = zh::strata::verify_stratification(spec, p, d);
                if (!cert.pass)
                    out.fail(std::string("stratification failed for ") + name +
                             " at p=" + std::to_string(p) + " d=" + std::to_string(d));
                // orbit checks on every order tuple the stratification saw
                std::set<std::vector<u64>> seen;
                for (const auto& row : cert.tuples) {
                    if (row.j.empty() || row.j.size() > spec.N) continue;
                    if (row.n > 1 && row.n % p == 0) continue;
                    if (!seen.insert(row.j).second) continue;
                    zh::strata::OrderTuple j{row.j, row.n};
                    auto orbit_cert = zh::strata::verify_eq30_local(spec, j, p);
                    if (!orbit_cert.pass)
                        out.fail(std::string("orbit reconciliation failed for ") + name);
                }
            }
    }
    return out;
}

// 8. the G_m scheme handled by the strata module reproduces the cyclotomic
//    local factors bit-exactly
Outcome criterion8() {
    Outcome out;
    std::istringstream gm_spec("1\nx0*x1\n");
    auto U = zh::strata::parse_subscheme(gm_spec);
    for (u64 p : zh::arith::primes_up_to(13))
        for (unsigned d = 1; d <= 2; ++d) {
            u64 q = 1;
            for (unsigned i = 0; i < d; ++i) q *= p;
            for (u64 n : zh::arith::divisors(zh::arith::factorize(q - 1))) {
                zh::strata::OrderTuple j{{n}, n};
                auto cert = zh::strata::verify_eq30_local(U, j, p);
                auto cyc = zh::localzeta::cyclotomic_local_factor(n, p);
                bool same = cert.pass && cert.orbits.size() == 1 &&
                            cert.orbits[0].members_in_U == zh::arith::euler_phi(n) &&
                            cert.orbits[0].factor.numerator == cyc.numerator &&
                            cert.orbits[0].factor.denominator == cyc.denominator;
                if (!same)
                    out.fail("strata factor differs from the cyclotomic one at n = " +
                             std::to_string(n) + ", p = " + std::to_string(p));
            }
        }
    return out;
}

struct Criterion {
    int id;
    const char* summary;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "G_m local partition, p <= 50, degrees through 6, exact", criterion1},
    {2, "character regrouping, n <= 100, p <= 100, within 1e-9", criterion2},
    {3, "G_m local factor = cyclotomic product through degree 4, p <= 13, exact", criterion3},
    {4, "global truncation at s = 3: shrinking gap and regrouped product within 1e-3", criterion4},
    {5, "elliptic corpus: counts, Hasse, positivity, order partition, l-parts", criterion5},
    {6, "elliptic local factor = orbit product through degree 3, p <= 20, exact", criterion6},
    {7, "stratification and orbit checks, 6 subschemes, p <= 13, d <= 2", criterion7},
    {8, "strata route reproduces cyclotomic factors bit-exactly", criterion8},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    bool all_pass = true;
    for (const Criterion& c : kCriteria) {
        if (only && c.id != only) continue;
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.note = std::string("exception: ") + e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::printf("[%s] criterion %d: %s (%lld ms)%s%s\n", out.pass ? "PASS" : "FAIL", c.id,
                    c.summary, static_cast<long long>(ms), out.note.empty() ? "" : " -- ",
                    out.note.c_str());
        std::fflush(stdout);
        all_pass = all_pass && out.pass;
    }
    return all_pass ? 0 : 1;
}
