#include "quadcong/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <ostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

namespace quadcong {

unsigned default_jobs() {
    if (const char* env = std::getenv("QUADCONG_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ScanResult run_scan(const ScanConfig& cfg) {
    if (cfg.p_max < 3) throw Error(Errc::Precondition, "--pmax must be >= 3");
    if (cfg.d_min > cfg.d_max) throw Error(Errc::Precondition, "--dmin must not exceed --dmax");

    ScanResult out;
    std::vector<std::pair<i64, i64>> points;
    for (i64 p = 3; p <= cfg.p_max; p += 2) {
        if (!is_odd_prime(p)) continue;
        for (i64 d = cfg.d_min; d <= cfg.d_max; ++d) {
            if (d % p == 0)
                out.skipped.emplace_back(p, d);
            else
                points.emplace_back(p, d);
        }
    }

    out.records.resize(points.size());
    std::vector<std::string> details(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                out.records[i] = verify_point(points[i].first, points[i].second, cfg.method, cfg.k, &details[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(points.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < points.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        if (!out.records[i].ok()) out.failures.push_back(details[i]);
    }
    return out;
}

namespace {

struct Options {
    i64 p = 0;
    i64 d = 0;
    std::string method = "tree";
    std::string format = "human";
    std::optional<unsigned> k;
    i64 p_max = 0;
    i64 d_min = 0;
    i64 d_max = 0;
    unsigned jobs = 0;
    unsigned max_k = 5;
    unsigned samples = 100;
    std::uint64_t seed = 20240601;
    std::string against;
    unsigned repeat = 1;
};

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    std::string detail;
    const auto rec = verify_point(o.p, o.d, parse_method(o.method), o.k, &detail);
    out << emit_record(rec, parse_format(o.format), true);
    if (!rec.ok()) {
        err << "counterexample: " << detail << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
    ScanConfig cfg;
    cfg.p_max = o.p_max;
    cfg.d_min = o.d_min;
    cfg.d_max = o.d_max;
    cfg.k = o.k;
    cfg.jobs = o.jobs ? o.jobs : default_jobs();
    cfg.format = parse_format(o.format);
    cfg.method = parse_method(o.method);
    const ScanResult res = run_scan(cfg);
    for (const auto& [p, d] : res.skipped) err << "skip p=" << p << " d=" << d << " (p divides d)\n";
    emit_records(out, res.records, cfg.format);

    std::size_t exact_two = 0;
    for (const auto& r : res.records)
        if (r.theorem12_vmin == Valuation{2, false}) ++exact_two;
    err << "scanned " << res.records.size() << " points, " << res.failures.size() << " failed, " << exact_two
        << " with vmin exactly 2\n";
    for (const auto& f : res.failures) err << "counterexample: " << f << '\n';
    return res.failures.empty() ? kExitOk : kExitCheckFailed;
}

int cmd_valuation(const Options& o, std::ostream& out, std::ostream&) {
    if (o.max_k < 2) throw Error(Errc::Precondition, "--max-k must be >= 2");
    const Format fmt = parse_format(o.format);
    Valuation last;
    unsigned k_final = 2;
    for (unsigned k = 2; k <= o.max_k; ++k) {
        const ValuationResult v = quad_valuation(wolstenholme_sum(o.p, o.d, k), k);
        last = v.vmin();
        k_final = k;
        if (fmt == Format::Json) {
            nlohmann::ordered_json j;
            j["p"] = o.p;
            j["d"] = o.d;
            j["k"] = k;
            j["va"] = v.va.exponent;
            j["vb"] = v.vb.exponent;
            j["vmin"] = last.exponent;
            j["saturated"] = last.saturated;
            out << j.dump() << '\n';
        } else {
            out << "p=" << o.p << " d=" << o.d << " k=" << k << " va=" << v.va << " vb=" << v.vb << " vmin=" << last
                << '\n';
        }
        if (!last.saturated) break;
    }
    const unsigned target = default_target(o.p, o.d, k_final);
    if (fmt != Format::Json)
        out << "vmin " << last << " (target " << target << "): " << (last.at_least(target) ? "OK" : "FAIL") << '\n';
    return last.at_least(target) ? kExitOk : kExitCheckFailed;
}

int cmd_identities(const Options& o, std::ostream& out, std::ostream& err) {
    bool ok = true;
    auto report = [&](std::string_view name, const CheckOutcome& c) {
        out << name << ": " << (c.ok ? "OK" : "FAIL");
        if (!c.ok) {
            out << " (" << c.check;
            if (c.exponent) out << ", first differing exponent " << *c.exponent;
            out << ")";
            ok = false;
        }
        out << '\n';
    };
    report("lemma_suite", lemma_suite(o.p, o.d));
    report("intermediate_products", intermediate_products_check(o.p, o.d));

    const QuadElem diff = wolstenholme_sum(o.p, o.d, 3) - wolstenholme_sum_symmetric(o.p, o.d, 3);
    out << "index_set_difference: vmin " << quad_valuation(diff, 3).vmin() << '\n';

    if (o.p < 5) {
        err << "proof identities skipped: they need p >= 5\n";
        return ok ? kExitOk : kExitCheckFailed;
    }
    const auto modp = make_modulus(o.p, 1);
    std::vector<std::pair<i64, i64>> eligible;
    for (i64 m = 1; m < o.p; ++m)
        for (i64 n = 1; n < o.p; ++n) {
            const Residue D = modp(o.d), M = modp(m), N = modp(n);
            if (((M * M - D * N * N) * (N * N - D * M * M)).is_unit()) eligible.emplace_back(m, n);
        }
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
    unsigned passed = 0;
    for (unsigned s = 0; s < o.samples; ++s) {
        const auto [m, n] = eligible[pick(rng)];
        const auto r = proof_identity_check(o.p, o.d, m, n);
        if (r.ok) {
            ++passed;
        } else {
            ok = false;
            err << "counterexample: eight-term identity fails at p=" << o.p << " d=" << o.d << " m=" << m
                << " n=" << n << " (numerator " << (r.numerator_ok ? "ok" : "bad") << ", denominator "
                << (r.denominator_ok ? "ok" : "bad") << ", v(S) " << r.s_valuation.vmin() << ")\n";
        }
    }
    out << "proof_identity: " << passed << "/" << o.samples << " " << (passed == o.samples ? "OK" : "FAIL") << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

double time_compute_P(i64 p, i64 d, Method m, unsigned repeat, std::size_t& degree) {
    double best = 0;
    for (unsigned r = 0; r < std::max(1u, repeat); ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const DensePoly P = compute_P(p, d, m);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        degree = static_cast<std::size_t>(std::max<std::ptrdiff_t>(P.degree(), 0));
        if (r == 0 || ms < best) best = ms;
    }
    return best;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream&) {
    const Method m = parse_method(o.method);
    std::size_t degree = 0;
    const double ms = time_compute_P(o.p, o.d, m, o.repeat, degree);
    out << std::fixed << std::setprecision(3) << "method=" << method_name(m) << " p=" << o.p << " d=" << o.d
        << " degree=" << degree << " elapsed_ms=" << ms << '\n';
    if (!o.against.empty()) {
        const Method base = parse_method(o.against);
        const double base_ms = time_compute_P(o.p, o.d, base, o.repeat, degree);
        out << "method=" << method_name(base) << " p=" << o.p << " d=" << o.d << " degree=" << degree
            << " elapsed_ms=" << base_ms << '\n';
        out << "speedup " << method_name(base) << "/" << method_name(m) << " = " << std::setprecision(2)
            << (ms > 0 ? base_ms / ms : 0.0) << "x\n";
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verify congruences for products and inverse sums over (Z/p^k)[sqrt d]", "quadcong"};
    app.require_subcommand(1);
    Options o;

    auto method_opt = [&](CLI::App* sub) {
        sub->add_option("--method", o.method, "naive | tree | shortcut")
            ->check(CLI::IsMember({"naive", "tree", "shortcut"}));
    };
    auto format_opt = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "human | json | csv")->check(CLI::IsMember({"human", "json", "csv"}));
    };

    auto* verify = app.add_subcommand("verify", "Check one (p, d) point");
    verify->add_option("--p", o.p, "odd prime")->required();
    verify->add_option("--d", o.d, "integer not divisible by p")->required();
    verify->add_option("--k", o.k, "exponent for the inverse sum (default 3, or 5 for d = -1, p > 5)");
    method_opt(verify);
    format_opt(verify);

    auto* scan = app.add_subcommand("scan", "Check every odd prime p <= pmax against every d in [dmin, dmax]");
    scan->add_option("--pmax", o.p_max)->required();
    scan->add_option("--dmin", o.d_min)->required();
    scan->add_option("--dmax", o.d_max)->required();
    scan->add_option("--jobs", o.jobs, "worker threads (default $QUADCONG_JOBS or all cores)");
    scan->add_option("--k", o.k);
    method_opt(scan);
    format_opt(scan);

    auto* valuation = app.add_subcommand("valuation", "Valuation of the inverse sum at increasing k");
    valuation->add_option("--p", o.p)->required();
    valuation->add_option("--d", o.d)->required();
    valuation->add_option("--max-k", o.max_k)->required();
    format_opt(valuation);

    auto* identities = app.add_subcommand("identities", "Lemma suite and the eight-term identity on samples");
    identities->add_option("--p", o.p)->required();
    identities->add_option("--d", o.d)->required();
    identities->add_option("--samples", o.samples);
    identities->add_option("--seed", o.seed);

    auto* bench = app.add_subcommand("bench", "Time compute_P");
    bench->add_option("--p", o.p)->required();
    bench->add_option("--d", o.d)->required();
    bench->add_option("--method", o.method)->check(CLI::IsMember({"naive", "tree", "shortcut"}))->required();
    bench->add_option("--against", o.against, "second method to report a speedup against")
        ->check(CLI::IsMember({"naive", "tree", "shortcut"}));
    bench->add_option("--repeat", o.repeat, "best of N runs");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) return cmd_verify(o, out, err);
        if (*scan) return cmd_scan(o, out, err);
        if (*valuation) return cmd_valuation(o, out, err);
        if (*identities) return cmd_identities(o, out, err);
        if (*bench) return cmd_bench(o, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace quadcong
