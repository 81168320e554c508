// zh: verification suites for horizontal factorizations of Hasse-Weil zeta
// functions. Subcommands emit machine-readable certificates; exit status is
// 0 pass, 1 mathematical failure, 2 usage, 3 resource limit.

#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "CLI11.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "zh/arith.hpp"
#include "zh/characters.hpp"
#include "zh/elliptic.hpp"
#include "zh/errors.hpp"
#include "zh/gm.hpp"
#include "zh/localzeta.hpp"
#include "zh/strata.hpp"

namespace {

using zh::cli::VerificationReport;
using Detail = VerificationReport::Detail;
using Status = VerificationReport::Status;
using zh::localzeta::PowerSeries;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::string series_str(const PowerSeries& s) {
    std::string out = "[";
    for (int k = 0; k <= s.degree(); ++k) {
        if (k) out += ", ";
        out += s[k].get_str();
    }
    return out + "]";
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// ---------------- gm ----------------

std::vector<VerificationReport> run_gm_local(zh::arith::u64 p, unsigned max_degree) {
    std::vector<VerificationReport> reports;
    {
        Timer t;
        VerificationReport rep;
        rep.task = "gm.local.partition";
        rep.params = {{"prime", std::to_string(p)}, {"max_degree", std::to_string(max_degree)}};
        auto cert = zh::gm::verify_gm_local_partition(p, max_degree);
        for (const auto& row : cert.degrees)
            rep.details.push_back({"eq17",
                                   {{"p", std::to_string(p)}, {"d", std::to_string(row.d)}},
                                   row.closed_points.get_str(),
                                   row.partition_sum.get_str(),
                                   true,
                                   row.pass});
        for (const auto& row : cert.partitions)
            rep.details.push_back({"eq4",
                                   {{"p", std::to_string(p)}, {"nu", std::to_string(row.nu)}},
                                   row.group_order.get_str(),
                                   row.phi_sum.get_str(),
                                   true,
                                   row.pass});
        rep.elapsed_ms = t.ms();
        rep.finalize();
        reports.push_back(std::move(rep));
    }
    {
        Timer t;
        VerificationReport rep;
        rep.task = "gm.local.factorization";
        rep.params = {{"prime", std::to_string(p)}, {"max_degree", std::to_string(max_degree)}};
        unsigned __int128 range = 1;
        for (unsigned i = 0; i < max_degree; ++i) {
            range *= p;
            if (range > UINT64_MAX) throw zh::domain_error("gm local: p^max_degree out of range");
        }
        zh::arith::u64 n_max = std::max<zh::arith::u64>(static_cast<zh::arith::u64>(range) - 1, 1);
        auto cert = zh::gm::verify_eq25_local(p, max_degree, n_max);
        rep.details.push_back({"eq25",
                               {{"p", std::to_string(p)}, {"degree", std::to_string(max_degree)}},
                               series_str(cert.lhs),
                               series_str(cert.rhs),
                               true,
                               cert.pass});
        rep.elapsed_ms = t.ms();
        rep.finalize();
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::vector<VerificationReport> run_gm_global(double s, zh::arith::u64 n_max,
                                              zh::arith::u64 prime_bound) {
    Timer t;
    VerificationReport rep;
    rep.task = "gm.global.eq8";
    rep.params = {{"s", fmt(s)},
                  {"n_max", std::to_string(n_max)},
                  {"prime_bound", std::to_string(prime_bound)}};
    auto r = zh::gm::verify_eq8_global(s, n_max, prime_bound);
    rep.details.push_back({"eq8",
                           {{"quantity", "target"}},
                           "zeta(s-1)/zeta(s) by series summation",
                           fmt(r.target),
                           false,
                           true});
    rep.details.push_back({"eq8",
                           {{"quantity", "double_truncation"}, {"n_max", std::to_string(n_max)}},
                           fmt(r.target),
                           fmt(r.rhs) + " (gap " + fmt(r.gap) + ")",
                           false,
                           true});
    if (n_max >= 2)
        rep.details.push_back({"eq8",
                               {{"quantity", "convergence"}},
                               "gap(" + std::to_string(n_max) + ") < gap(" +
                                   std::to_string(n_max / 2) + ") = " + fmt(r.gap_half),
                               fmt(r.gap),
                               false,
                               r.converging});
    else
        rep.details.push_back({"eq8",
                               {{"quantity", "convergence"}},
                               "informational (n_max < 2: no comparison)",
                               fmt(r.gap),
                               false,
                               true});
    rep.details.push_back({"eq8",
                           {{"quantity", "regrouped"}},
                           fmt(r.target),
                           fmt(r.regrouped) + " (gap " + fmt(r.regrouped_gap) + ")",
                           false,
                           true});
    rep.elapsed_ms = t.ms();
    rep.finalize();
    return {rep};
}

// ---------------- characters ----------------

std::vector<VerificationReport> run_chars_eq7(zh::arith::u64 n_max, zh::arith::u64 prime_bound,
                                              unsigned threads) {
    Timer t;
    VerificationReport rep;
    rep.task = "chars.eq7";
    rep.params = {{"n_max", std::to_string(n_max)},
                  {"prime_bound", std::to_string(prime_bound)}};
    std::vector<zh::arith::u64> primes = zh::arith::primes_up_to(prime_bound);
    std::vector<std::vector<Detail>> slots(n_max);
    zh::cli::run_indexed(n_max, threads, [&](std::size_t i) {
        zh::arith::u64 n = i + 1;
        for (zh::arith::u64 p : primes) {
            if (n > 1 && n % p == 0) continue;
            auto cert = zh::characters::verify_eq7_local(n, p);
            slots[i].push_back({"eq7",
                                {{"n", std::to_string(n)},
                                 {"p", std::to_string(p)},
                                 {"f", std::to_string(cert.f)},
                                 {"g", std::to_string(cert.g)}},
                                "max coefficient error <= 1e-9",
                                fmt(cert.max_coeff_error),
                                false,
                                cert.pass});
        }
    });
    for (auto& s : slots)
        for (auto& d : s) rep.details.push_back(std::move(d));
    rep.elapsed_ms = t.ms();
    rep.finalize();
    return {rep};
}

// ---------------- elliptic ----------------

void eq4_details(VerificationReport& rep, const zh::elliptic::Curve& curve, zh::arith::u64 p,
                 unsigned nu) {
    auto cert = zh::elliptic::verify_eq4_local(curve, p, nu);
    std::map<std::string, std::string> base{{"a", std::to_string(curve.a)},
                                            {"b", std::to_string(curve.b)},
                                            {"p", std::to_string(p)},
                                            {"nu", std::to_string(nu)}};
    rep.details.push_back({"eq4", base, cert.count_recurrence.get_str(),
                           cert.count_enumeration.get_str() + " (enum), " +
                               cert.psi_sum.get_str() + " (sum psi)",
                           true, cert.counts_match});
    for (const auto& row : cert.l_parts) {
        auto inputs = base;
        inputs["l"] = std::to_string(row.l);
        rep.details.push_back({"eq4", inputs, row.l_part.get_str(), row.psi_l_sum.get_str(),
                               true, row.pass});
    }
}

void eq13_details(VerificationReport& rep, const zh::elliptic::Curve& curve, zh::arith::u64 p,
                  unsigned degree) {
    auto cert = zh::elliptic::verify_eq13_local(curve, p, degree);
    std::map<std::string, std::string> base{{"a", std::to_string(curve.a)},
                                            {"b", std::to_string(curve.b)},
                                            {"p", std::to_string(p)}};
    rep.details.push_back({"eq13", base, series_str(cert.lhs), series_str(cert.rhs), true,
                           cert.lhs == cert.rhs});
    for (const auto& row : cert.degrees) {
        auto inputs = base;
        inputs["d"] = std::to_string(row.d);
        rep.details.push_back({"eq13", inputs, row.closed_points.get_str(),
                               row.orbit_sum.get_str(), true, row.pass});
    }
}

std::vector<VerificationReport> run_elliptic_local(long long a, long long b, zh::arith::u64 p,
                                                   unsigned max_degree) {
    zh::elliptic::Curve curve = zh::elliptic::make_curve(a, b);
    std::vector<VerificationReport> reports;
    {
        Timer t;
        VerificationReport rep;
        rep.task = "elliptic.local.eq4";
        rep.params = {{"a", std::to_string(a)},
                      {"b", std::to_string(b)},
                      {"prime", std::to_string(p)},
                      {"max_degree", std::to_string(max_degree)}};
        for (unsigned nu = 1; nu <= max_degree; ++nu) {
            try {
                eq4_details(rep, curve, p, nu);
            } catch (const zh::resource_error&) {
                rep.status = Status::resource_limit;
                rep.details.push_back({"eq4",
                                       {{"p", std::to_string(p)}, {"nu", std::to_string(nu)}},
                                       "p^nu within enumeration budget",
                                       "budget exceeded: level skipped",
                                       true,
                                       true});
                break;
            }
        }
        rep.elapsed_ms = t.ms();
        rep.finalize();
        reports.push_back(std::move(rep));
    }
    {
        Timer t;
        VerificationReport rep;
        rep.task = "elliptic.local.eq13";
        rep.params = {{"a", std::to_string(a)},
                      {"b", std::to_string(b)},
                      {"prime", std::to_string(p)},
                      {"max_degree", std::to_string(max_degree)}};
        try {
            eq13_details(rep, curve, p, max_degree);
        } catch (const zh::resource_error&) {
            rep.status = Status::resource_limit;
        }
        rep.elapsed_ms = t.ms();
        rep.finalize();
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::vector<std::pair<long long, long long>> load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw zh::domain_error("cannot open curve file: " + path);
    std::vector<std::pair<long long, long long>> curves;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        long long a, b;
        if (ls >> a >> b) curves.emplace_back(a, b);
        else if (line.find_first_not_of(" \t\r") != std::string::npos)
            throw zh::domain_error("curve file: expected 'a b' on line: " + line);
    }
    return curves;
}

std::vector<VerificationReport> run_elliptic_corpus(const std::string& path,
                                                    zh::arith::u64 prime_bound,
                                                    unsigned eq13_degree,
                                                    zh::arith::u64 eq13_prime_bound,
                                                    unsigned threads) {
    auto curves = load_curve_file(path);
    std::vector<zh::arith::u64> primes = zh::arith::primes_up_to(prime_bound);
    std::vector<std::vector<VerificationReport>> slots(curves.size());
    zh::cli::run_indexed(curves.size(), threads, [&](std::size_t i) {
        auto [a, b] = curves[i];
        zh::elliptic::Curve curve = zh::elliptic::make_curve(a, b);
        Timer t;
        VerificationReport rep4;
        rep4.task = "elliptic.corpus.eq4";
        rep4.params = {{"a", std::to_string(a)}, {"b", std::to_string(b)}};
        for (zh::arith::u64 p : primes) {
            if (!zh::elliptic::good_reduction(curve, p)) continue;
            for (unsigned nu = 1;; ++nu) {
                try {
                    eq4_details(rep4, curve, p, nu);
                } catch (const zh::resource_error&) {
                    break; // budget reached; smaller levels all checked
                }
            }
        }
        rep4.elapsed_ms = t.ms();
        rep4.finalize();

        Timer t13;
        VerificationReport rep13;
        rep13.task = "elliptic.corpus.eq13";
        rep13.params = {{"a", std::to_string(a)},
                        {"b", std::to_string(b)},
                        {"max_degree", std::to_string(eq13_degree)}};
        for (zh::arith::u64 p : zh::arith::primes_up_to(eq13_prime_bound)) {
            if (!zh::elliptic::good_reduction(curve, p)) continue;
            try {
                eq13_details(rep13, curve, p, eq13_degree);
            } catch (const zh::resource_error&) {
                rep13.status = Status::resource_limit;
            }
        }
        rep13.elapsed_ms = t13.ms();
        rep13.finalize();
        slots[i] = {std::move(rep4), std::move(rep13)};
    });
    std::vector<VerificationReport> reports;
    for (auto& s : slots)
        for (auto& r : s) reports.push_back(std::move(r));
    return reports;
}

// ---------------- strata ----------------

std::vector<VerificationReport> run_strata_verify(const std::string& path, zh::arith::u64 p,
                                                  unsigned d) {
    zh::strata::OpenSubschemeSpec spec = zh::strata::parse_subscheme_file(path);
    std::vector<VerificationReport> reports;
    zh::strata::StratificationCertificate strat;
    {
        Timer t;
        VerificationReport rep;
        rep.task = "strata.stratification";
        rep.params = {{"spec", path},
                      {"prime", std::to_string(p)},
                      {"degree", std::to_string(d)}};
        strat = zh::strata::verify_stratification(spec, p, d);
        std::map<std::string, std::string> base{{"p", std::to_string(p)},
                                                {"d", std::to_string(d)}};
        rep.details.push_back({"eq27", base, std::to_string(strat.direct_count),
                               std::to_string(strat.cell_sum) + " (cell sum)", true,
                               strat.direct_count == strat.cell_sum});
        rep.details.push_back({"eq29", base, std::to_string(strat.direct_count),
                               std::to_string(strat.order_tuple_sum) + " (order-tuple sum)", true,
                               strat.direct_count == strat.order_tuple_sum});
        rep.elapsed_ms = t.ms();
        rep.finalize();
        reports.push_back(std::move(rep));
    }
    {
        Timer t;
        VerificationReport rep;
        rep.task = "strata.eq30";
        rep.params = {{"spec", path},
                      {"prime", std::to_string(p)},
                      {"degree", std::to_string(d)}};
        std::vector<std::vector<zh::arith::u64>> seen;
        for (const auto& row : strat.tuples) {
            if (row.j.empty() || row.j.size() > spec.N) continue;
            if (row.n > 1 && row.n % p == 0) continue;
            if (std::find(seen.begin(), seen.end(), row.j) != seen.end()) continue;
            seen.push_back(row.j);
            zh::strata::OrderTuple j{row.j, row.n};
            try {
                auto cert = zh::strata::verify_eq30_local(spec, j, p);
                std::string jstr = "(";
                for (std::size_t i = 0; i < row.j.size(); ++i)
                    jstr += (i ? "," : "") + std::to_string(row.j[i]);
                jstr += ")";
                zh::arith::u64 members = 0;
                for (const auto& o : cert.orbits) members += o.members_in_U;
                rep.details.push_back({"eq30",
                                       {{"j", jstr}, {"p", std::to_string(p)},
                                        {"f", std::to_string(cert.f)}},
                                       std::to_string(cert.stratum_count),
                                       std::to_string(members),
                                       true,
                                       cert.pass});
            } catch (const zh::resource_error&) {
                rep.status = Status::resource_limit;
            }
        }
        rep.elapsed_ms = t.ms();
        rep.finalize();
        reports.push_back(std::move(rep));
    }
    return reports;
}

// ---------------- output ----------------

void emit(const std::vector<VerificationReport>& reports, const std::string& format) {
    if (format == "json")
        std::cout << zh::cli::to_json(reports).dump(2) << "\n";
    else
        std::cout << zh::cli::to_text(reports);
    for (const auto& r : reports)
        std::cerr << "zh: " << r.task << " -> " << zh::cli::to_string(r.status) << " ("
                  << r.elapsed_ms << " ms)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suites for horizontal factorizations of zeta functions"};
    app.require_subcommand(1);

    std::string format = "text";
    unsigned threads = 0;
    app.add_option("--format", format, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--threads", threads, "worker count (default: ZH_THREADS or hardware)");
    app.fallthrough();

    // gm
    auto* gm = app.add_subcommand("gm", "multiplicative-group checks");
    gm->require_subcommand(1);
    auto* gm_local = gm->add_subcommand("local", "per-prime partition and factor identities");
    std::uint64_t gm_p = 3;
    unsigned gm_D = 2;
    gm_local->add_option("--prime", gm_p, "prime p")->required();
    gm_local->add_option("--max-degree", gm_D, "check through this closed-point degree")->required();
    auto* gm_global = gm->add_subcommand("global", "numeric truncation of the global identity");
    double gm_s = 3.0;
    std::uint64_t gm_nmax = 100, gm_pbound = 10000;
    gm_global->add_option("--s", gm_s, "evaluation point, s > 2")->required();
    gm_global->add_option("--n-max", gm_nmax, "truncate the order product at n_max")->required();
    gm_global->add_option("--prime-bound", gm_pbound, "truncate Euler products at this prime")
        ->required();

    // chars
    auto* chars = app.add_subcommand("chars", "Dirichlet character checks");
    chars->require_subcommand(1);
    auto* chars_eq7 = chars->add_subcommand("eq7", "character regrouping sweep");
    std::uint64_t ch_nmax = 100, ch_pbound = 100;
    chars_eq7->add_option("--n-max", ch_nmax, "moduli to sweep")->required();
    chars_eq7->add_option("--prime-bound", ch_pbound, "primes to sweep")->required();

    // elliptic
    auto* ell = app.add_subcommand("elliptic", "elliptic curve checks");
    ell->require_subcommand(1);
    auto* ell_local = ell->add_subcommand("local", "one curve at one prime");
    long long ea = 1, eb = 1;
    std::uint64_t ep = 5;
    unsigned eD = 1;
    ell_local->add_option("--a", ea, "curve coefficient a")->required();
    ell_local->add_option("--b", eb, "curve coefficient b")->required();
    ell_local->add_option("--prime", ep, "good prime p")->required();
    ell_local->add_option("--max-degree", eD, "levels nu = 1..D")->required();
    auto* ell_corpus = ell->add_subcommand("corpus", "full suite over a curve list");
    std::string corpus_path;
    std::uint64_t corpus_pbound = 50, corpus_eq13_pbound = 20;
    unsigned corpus_eq13_degree = 3;
    ell_corpus->add_option("--file", corpus_path, "curve corpus file: 'a b' per line")->required();
    ell_corpus->add_option("--prime-bound", corpus_pbound, "eq4 sweep primes");
    ell_corpus->add_option("--eq13-prime-bound", corpus_eq13_pbound, "eq13 sweep primes");
    ell_corpus->add_option("--eq13-degree", corpus_eq13_degree, "eq13 series degree");

    // strata
    auto* strata = app.add_subcommand("strata", "open subschemes of projective space");
    strata->require_subcommand(1);
    auto* strata_verify = strata->add_subcommand("verify", "stratification and orbit checks");
    std::string spec_path;
    std::uint64_t sp = 3;
    unsigned sd = 1;
    strata_verify->add_option("--spec", spec_path, "subscheme spec file")->required();
    strata_verify->add_option("--prime", sp, "prime p")->required();
    strata_verify->add_option("--degree", sd, "field degree d")->required();

    // report
    auto* report_cmd = app.add_subcommand("report", "re-render a saved JSON report stream");
    std::string report_input = "-";
    report_cmd->add_option("--input", report_input, "JSON report file, or - for stdin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors are exit 2
    }

    unsigned workers = zh::cli::resolve_threads(threads);
    try {
        std::vector<VerificationReport> reports;
        if (gm_local->parsed())
            reports = run_gm_local(gm_p, gm_D);
        else if (gm_global->parsed())
            reports = run_gm_global(gm_s, gm_nmax, gm_pbound);
        else if (chars_eq7->parsed())
            reports = run_chars_eq7(ch_nmax, ch_pbound, workers);
        else if (ell_local->parsed())
            reports = run_elliptic_local(ea, eb, ep, eD);
        else if (ell_corpus->parsed())
            reports = run_elliptic_corpus(corpus_path, corpus_pbound, corpus_eq13_degree,
                                          corpus_eq13_pbound, workers);
        else if (strata_verify->parsed())
            reports = run_strata_verify(spec_path, sp, sd);
        else if (report_cmd->parsed()) {
            nlohmann::json j;
            if (report_input == "-") {
                j = nlohmann::json::parse(std::cin);
            } else {
                std::ifstream in(report_input);
                if (!in) throw zh::domain_error("cannot open report file: " + report_input);
                j = nlohmann::json::parse(in);
            }
            if (j.is_array())
                for (const auto& item : j) reports.push_back(zh::cli::report_from_json(item));
            else
                reports.push_back(zh::cli::report_from_json(j));
        }
        emit(reports, format);
        return zh::cli::exit_code(reports);
    } catch (const zh::resource_error& e) {
        std::cerr << "zh: resource limit: " << e.what() << "\n";
        return 3;
    } catch (const zh::domain_error& e) {
        std::cerr << "zh: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "zh: error: " << e.what() << "\n";
        return 1;
    }
}
