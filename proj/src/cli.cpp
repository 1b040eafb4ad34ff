#include "siegel/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "siegel/analytic.hpp"
#include "siegel/bound_engine.hpp"
#include "siegel/common.hpp"
#include "siegel/prime_tools.hpp"
#include "siegel/quad_arith.hpp"
#include "siegel/table_cache.hpp"

namespace siegel {

namespace {

const std::map<std::string, std::string>& claim_table() {
    static const std::map<std::string, std::string> t = {
        {"pp_upper", "eps(q) < 0 for prime powers q <= 2278383"},
        {"pp_lower", "eps(q) + 1.75/log^2 q - 1/q > 0 for prime powers q <= 2278421"},
        {"dusart", "|sum 1/p - log log x - B1| <= 0.2/log^3 x"},
        {"j_rounding", "J1+J3 and J2+J4 round up to the stored 0.354 and 1.067"},
        {"case1_bound", "case log d <= 42: 20.984 - 0.341 log d > 6.5"},
        {"case2_bound", "case 42 < log d <= 100: k0-corner bound > 6.5"},
        {"case2_sigma", "sigma(16) below the stored 3.786"},
        {"case2_k0_exceeds_sigma", "1 + k0 > sigma in case 2"},
        {"case3_bound", "case log d > 100: chain bound > 6.5"},
        {"case3_monotone_tail", "case-3 bound non-decreasing on the geometric t-grid"},
        {"seam_42", "bound at the case 1/2 seam"},
        {"seam_100", "bound at the case 2/3 seam"},
        {"class_number_formula", "2 pi h/(w sqrt d) agrees with the L(1, chi) series"},
        {"lemma_h_count", "sum_{a <= sqrt(d)/2} nu(a) <= h(-d)"},
        {"lemma_h_reciprocal", "sum_{a <= sqrt(d)/2} nu(a)/a <= h(-d)/11"},
        {"lemma_h_chain", "sum_{a <= sqrt(d)/2} nu(a)/a <= 9.161 + (h - 101)/35"},
        {"lemma_h_boundary", "a = sqrt(d)/2 is an integer"},
        {"nu_formula", "nu from the factorisation equals the congruence count"},
        {"dedekind_coefficient", "sum_{u^2 a = n} nu(a) = sum_{m | n} chi(m)"},
        {"theorem2_trend", "|ratio/2pi - 1| decreasing along the h grid"},
        {"constants_audit", "every rounded constant rounds in the safe direction"},
    };
    return t;
}

struct Outcome {
    nlohmann::json result;
    std::vector<std::string> failed_claims;
    std::optional<std::string> csv;
    std::vector<std::string> text;
};

void add_failed(Outcome& o, const VerificationReport& r) {
    for (const auto& f : r.failures)
        if (std::find(o.failed_claims.begin(), o.failed_claims.end(), f.quantity) == o.failed_claims.end())
            o.failed_claims.push_back(f.quantity);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Globals {
    std::string format = "auto";
    std::string output;
    bool no_timestamp = false;
    std::uint64_t seed = kDefaultSampleSeed;
    std::string cache;
};

std::optional<std::filesystem::path> cache_path(const Globals& g, std::uint64_t limit) {
    if (!g.cache.empty()) {
        std::filesystem::path p(g.cache);
        if (std::filesystem::is_directory(p)) p /= "ppt_" + std::to_string(limit) + ".bin";
        return p;
    }
    return default_cache_path(limit);
}

void report_text(Outcome& o, const std::string& label, const VerificationReport& r) {
    o.text.push_back(label + ": " + (r.passed ? "passed" : "FAILED") + ", range [" + fmt(r.range_lo) + ", " +
                     fmt(r.range_hi) + "], min_slack " + fmt(r.min_slack));
    for (const auto& c : r.checks)
        o.text.push_back("  " + c.claim + ": evaluated " + std::to_string(c.evaluated) + ", min_slack " +
                         fmt(c.min_slack) + " at " + fmt(c.argmin));
    for (const auto& f : r.failures)
        o.text.push_back("  failure " + f.quantity + " at " + fmt(f.value) + " slack " + fmt(f.slack));
}

// --- subcommands -----------------------------------------------------------

Outcome cmd_prop_verify(const Globals& g) {
    const auto table = load_or_build(kPropositionLowerEnd, cache_path(g, kPropositionLowerEnd));
    const auto& m = MertensConstants::standard();
    const auto r = verify_proposition(table, m);
    Outcome o;
    o.result = to_json(r);
    o.result["constants"] = {{"B1", m.B1}, {"C", m.C}, {"B2", m.B2}, {"C_tail_bound", m.C_tail_bound}};
    add_failed(o, r);
    report_text(o, "prop-verify", r);
    o.text.push_back("B2 = " + fmt(m.B2) + " (C = " + fmt(m.C) + ", tail <= " + fmt(m.C_tail_bound) + ")");
    return o;
}

Outcome cmd_dusart(const Globals& g, double x) {
    if (!(x >= static_cast<double>(kPropositionUpperEnd)) || !(x <= 1e9))
        throw InvalidArgument("dusart-check: --x must lie in [2278383, 1e9]");
    const auto limit = static_cast<std::uint64_t>(std::floor(x));
    const auto table = load_or_build(limit, cache_path(g, limit));
    const auto& m = MertensConstants::standard();
    const double lx = std::log(x);
    const double lhs = std::fabs(prime_reciprocal_sum(table, x) - std::log(lx) - m.B1);
    const double rhs = 0.2 / (lx * lx * lx);
    const bool ok = check_dusart(table, m, x);
    Outcome o;
    o.result = {{"x", number_json(x)}, {"lhs", lhs}, {"rhs", rhs}, {"passed", ok}};
    if (!ok) o.failed_claims.push_back("dusart");
    o.text.push_back("dusart-check x = " + fmt(x) + ": |S - loglog - B1| = " + fmt(lhs) + " vs " + fmt(rhs) +
                     (ok ? " passed" : " FAILED"));
    return o;
}

Outcome cmd_j_integrals(double tol) {
    QuadratureSpec spec;
    spec.abs_tolerance = tol;
    spec.validate();
    const JValues j = compute_J(spec);
    const JValues jh = compute_J(spec.halved());
    const auto audit = audit_j_constants(j);
    Outcome o;
    o.result = to_json(j, spec);
    double drift = 0.0;
    for (int i = 0; i < 4; ++i) drift = std::max(drift, std::fabs(j.J[i] - jh.J[i]));
    o.result["halving_drift"] = drift;
    const auto [lc, cc] = rounded_bound_constants(j);
    o.result["rounded"] = {lc, cc};
    o.result["audit"] = to_json(audit);
    if (!audit_passes(audit)) o.failed_claims.push_back("j_rounding");
    std::string csv = "index,value,error\n";
    for (int i = 0; i < 4; ++i) {
        csv += std::to_string(i + 1) + "," + fmt(j.J[i]) + "," + fmt(j.error_estimates[i]) + "\n";
        o.text.push_back("J" + std::to_string(i + 1) + " = " + fmt(j.J[i]) + " (err " + fmt(j.error_estimates[i]) +
                         ")");
    }
    o.text.push_back("rounded (J1+J3, J2+J4) = (" + fmt(lc) + ", " + fmt(cc) + "), halving drift " + fmt(drift));
    o.csv = csv;
    return o;
}

const PrimePowerTable& small_table() {
    static const PrimePowerTable t = PrimePowerTable::build(1 << 16);
    return t;
}

Outcome cmd_case_scan(double from, double to, double step) {
    const BoundConstants c;
    const BoundCurve curve = case2_scan(step, small_table(), from, to, c);
    Outcome o;
    o.result = {{"from", from},
                {"to", to},
                {"step", step},
                {"samples", curve.samples.size()},
                {"min_bound", curve.min_bound},
                {"argmin_logd", curve.argmin_logd},
                {"argmin_k0", k0(curve.argmin_logd, c.case2_ell)}};
    if (!(curve.min_bound > c.assumption_const)) o.failed_claims.push_back("case2_bound");
    o.csv = to_csv(curve);
    o.text.push_back("case-scan (" + fmt(from) + ", " + fmt(to) + "] step " + fmt(step) + ": min " +
                     fmt(curve.min_bound) + " at log d = " + fmt(curve.argmin_logd));
    return o;
}

Outcome cmd_theorem1(const Globals& g, double step) {
    constexpr std::uint64_t kLimit = 2300000;
    const auto table = load_or_build(kLimit, cache_path(g, kLimit));
    const auto cert = theorem1_certificate(table, step);
    Outcome o;
    o.result = to_json(cert);
    add_failed(o, cert.report);
    o.csv = to_csv(cert.curve);
    report_text(o, "certify-theorem1", cert.report);
    o.text.push_back("global min " + fmt(cert.min_bound) + " at log d = " + fmt(cert.argmin_logd) + " (" +
                     cert.argmin_case + "), margin " + fmt(cert.margin));
    return o;
}

Outcome cmd_class_number(std::int64_t d) {
    const FundamentalDiscriminant disc(d);
    const auto forms = reduced_forms(disc);
    Outcome o;
    o.result = to_json(forms);
    if (d < 100000000) {
        const auto f = class_number_formula_check(disc);
        o.result["formula_check"] = {{"formula", f.formula},
                                     {"series", f.series},
                                     {"tail_bound", f.tail_bound},
                                     {"consistent", f.consistent}};
        if (!f.consistent) o.failed_claims.push_back("class_number_formula");
    }
    o.text.push_back("h(-" + std::to_string(d) + ") = " + std::to_string(forms.class_number()));
    return o;
}

Outcome cmd_lemma_h(std::optional<std::int64_t> d, bool sample, std::uint64_t seed) {
    std::vector<FundamentalDiscriminant> ds;
    if (sample) ds = lemma_h_sample(seed);
    if (d) ds.emplace_back(*d);
    Outcome o;
    o.result = nlohmann::json::array();
    for (const auto& disc : ds) {
        const auto r = check_lemma_h(disc);
        nlohmann::json item = to_json(r);
        item["d"] = disc.d();
        item["h"] = reduced_forms(disc).class_number();
        o.result.push_back(item);
        add_failed(o, r);
        report_text(o, "lemma-h d = " + std::to_string(disc.d()), r);
    }
    return o;
}

Outcome cmd_nu(std::int64_t d, std::uint64_t max_a) {
    const FundamentalDiscriminant disc(d);
    const auto r = check_nu_table(disc, max_a);
    Outcome o;
    o.result = to_json(r);
    add_failed(o, r);
    report_text(o, "nu d = " + std::to_string(d), r);
    const auto table = NuOracle(disc).table(max_a);
    std::string csv = "a,nu,bruteforce\n";
    for (std::uint64_t a = 1; a <= max_a; ++a)
        csv += std::to_string(a) + "," + std::to_string(table[a]) + "," + std::to_string(nu_bruteforce(disc, a)) +
               "\n";
    o.csv = csv;
    return o;
}

Outcome cmd_dedekind(std::int64_t d, std::uint64_t max_n) {
    const auto r = check_coefficient_identity(FundamentalDiscriminant(d), max_n);
    Outcome o;
    o.result = to_json(r);
    add_failed(o, r);
    report_text(o, "dedekind-check d = " + std::to_string(d), r);
    return o;
}

Outcome cmd_theorem2(const std::vector<std::uint64_t>& grid) {
    if (grid.empty()) throw InvalidArgument("theorem2: --h-grid must not be empty");
    Outcome o;
    o.result = nlohmann::json::object();
    auto points = nlohmann::json::array();
    std::string csv = "h,y,s2,lower_bound,ratio,ratio_to_2pi\n";
    bool trend = true;
    double prev = std::numeric_limits<double>::infinity();
    for (const auto h : grid) {
        const auto p = theorem2_ratio(h);
        points.push_back({{"h", p.h},
                          {"y", p.y},
                          {"s2", p.s2},
                          {"lower_bound", p.lower_bound},
                          {"ratio", p.ratio},
                          {"ratio_to_2pi", p.ratio_to_2pi}});
        csv += std::to_string(p.h) + "," + std::to_string(p.y) + "," + fmt(p.s2) + "," + fmt(p.lower_bound) + "," +
               fmt(p.ratio) + "," + fmt(p.ratio_to_2pi) + "\n";
        o.text.push_back("h = " + std::to_string(h) + ": y = " + std::to_string(p.y) + ", ratio/2pi = " +
                         fmt(p.ratio_to_2pi));
        const double dev = std::fabs(p.ratio_to_2pi - 1.0);
        if (!(dev < prev)) trend = false;
        prev = dev;
    }
    o.result["points"] = points;
    o.result["trend_toward_one"] = trend;
    if (!trend) o.failed_claims.push_back("theorem2_trend");
    o.csv = csv;
    return o;
}

Outcome cmd_constants_audit() {
    const auto audit = audit_constants();
    Outcome o;
    o.result = to_json(audit);
    if (!audit_passes(audit)) o.failed_claims.push_back("constants_audit");
    std::string csv = "name,expression_value,stored_value,stored_is_upper,direction_ok\n";
    for (const auto& e : audit) {
        csv += e.name + "," + fmt(e.expression_value) + "," + fmt(e.stored_value) + "," +
               (e.stored_is_upper ? "1" : "0") + "," + (e.direction_ok ? "1" : "0") + "\n";
        o.text.push_back(e.name + ": " + fmt(e.expression_value) + (e.stored_is_upper ? " <= " : " >= ") +
                         fmt(e.stored_value) + (e.direction_ok ? "" : "  WRONG DIRECTION"));
    }
    o.csv = csv;
    return o;
}

std::vector<std::uint64_t> parse_grid(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size() || !(v >= 1.0) || v != std::floor(v))
            throw InvalidArgument("theorem2: bad grid value '" + tok + "'");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

}  // namespace

std::string describe_claim(const std::string& claim) {
    const auto& t = claim_table();
    if (auto it = t.find(claim); it != t.end()) return it->second;
    if (claim.rfind("audit_", 0) == 0) return "rounded constant " + claim.substr(6) + " rounds the unsafe way";
    if (claim.rfind("case3_", 0) == 0) return "case-3 chain link " + claim.substr(6);
    return "unregistered claim";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification harness for the explicit Siegel-zero bound", "siegel_verify"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "json, csv or text (default: csv for case-scan, json otherwise)")
        ->check(CLI::IsMember({"auto", "json", "csv", "text"}));
    app.add_option("--output", g.output, "write the report here instead of stdout");
    app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp field");
    app.add_option("--seed", g.seed, "seed for sampled discriminants");
    app.add_option("--cache", g.cache, "prime power table cache file or directory");

    auto* prop = app.add_subcommand("prop-verify", "lattice checks of the explicit window for eps(x)");
    double dusart_x = 0.0;
    auto* dusart = app.add_subcommand("dusart-check", "Dusart-type bound for sum 1/p at x");
    dusart->add_option("--x", dusart_x, "abscissa, >= 2278383")->required();
    double j_tol = QuadratureSpec{}.abs_tolerance;
    auto* jint = app.add_subcommand("j-integrals", "J1..J4 by adaptive Gauss-Kronrod");
    jint->add_option("--tol", j_tol, "absolute tolerance per integral");
    double scan_from = kCase1End, scan_to = kCase2End, scan_step = 1e-3;
    auto* scan = app.add_subcommand("case-scan", "case-2 bound over (from, to]");
    scan->add_option("--from", scan_from);
    scan->add_option("--to", scan_to);
    scan->add_option("--step", scan_step);
    double cert_step = 1e-3;
    auto* cert = app.add_subcommand("certify-theorem1", "all three cases over [log 3e8, 1000]");
    cert->add_option("--step", cert_step, "log d grid step");
    std::int64_t cn_d = 0;
    auto* cn = app.add_subcommand("class-number", "reduced forms of discriminant -d");
    cn->add_option("--d", cn_d)->required();
    std::optional<std::int64_t> lh_d;
    bool lh_sample = false;
    auto* lh = app.add_subcommand("lemma-h", "short norm sum against h(-d)/11");
    auto* lh_d_opt = lh->add_option("--d", lh_d);
    auto* lh_s_opt = lh->add_flag("--sample", lh_sample, "20 discriminants above 3e8 (see --seed)");
    lh_d_opt->excludes(lh_s_opt);
    std::int64_t nu_d = 0;
    std::uint64_t nu_max = 2000;
    auto* nu_cmd = app.add_subcommand("nu", "nu(a) against the congruence count");
    nu_cmd->add_option("--d", nu_d)->required();
    nu_cmd->add_option("--max-a", nu_max);
    std::int64_t dk_d = 0;
    std::uint64_t dk_max = 10000;
    auto* dk = app.add_subcommand("dedekind-check", "Dirichlet coefficients of the Dedekind zeta function");
    dk->add_option("--d", dk_d)->required();
    dk->add_option("--max-n", dk_max);
    std::string h_grid = "1000,10000,100000,1000000";
    auto* t2 = app.add_subcommand("theorem2", "h -> y inversion and the ratio to 2 pi");
    t2->add_option("--h-grid", h_grid, "comma-separated class numbers");
    auto* audit = app.add_subcommand("constants-audit", "rounding direction of every stored constant");
    app.fallthrough();

    std::vector<const char*> argv{"siegel_verify"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "siegel_verify: " << e.what() << "\n";
        return kExitInvalidConfig;
    }

    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Outcome o;
    try {
        if (sub == prop) o = cmd_prop_verify(g);
        else if (sub == dusart) o = cmd_dusart(g, dusart_x);
        else if (sub == jint) o = cmd_j_integrals(j_tol);
        else if (sub == scan) o = cmd_case_scan(scan_from, scan_to, scan_step);
        else if (sub == cert) o = cmd_theorem1(g, cert_step);
        else if (sub == cn) o = cmd_class_number(cn_d);
        else if (sub == lh) {
            if (!lh_d && !lh_sample) throw InvalidArgument("lemma-h: give --d or --sample");
            o = cmd_lemma_h(lh_d, lh_sample, g.seed);
        } else if (sub == nu_cmd) o = cmd_nu(nu_d, nu_max);
        else if (sub == dk) o = cmd_dedekind(dk_d, dk_max);
        else if (sub == t2) o = cmd_theorem2(parse_grid(h_grid));
        else if (sub == audit) o = cmd_constants_audit();
    } catch (const InvalidArgument& e) {
        err << "siegel_verify " << name << ": invalid configuration: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::invalid_argument& e) {
        err << "siegel_verify " << name << ": invalid configuration: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const CertificationFailure& e) {
        o.failed_claims.push_back(e.link());
        o.result = {{"error", e.what()}};
    } catch (const ConvergenceFailure& e) {
        o.failed_claims.push_back("j_rounding");
        o.result = {{"error", e.what()}};
    }

    std::string format = g.format;
    if (format == "auto") format = sub == scan ? "csv" : "json";
    const bool passed = o.failed_claims.empty();

    std::string body;
    if (format == "csv") {
        if (!o.csv) {
            err << "siegel_verify " << name << ": csv output is not available for this subcommand\n";
            return kExitInvalidConfig;
        }
        body = *o.csv;
    } else if (format == "text") {
        for (const auto& line : o.text) body += line + "\n";
        body += name + (passed ? ": PASS\n" : ": FAIL\n");
    } else {
        nlohmann::json doc = {{"command", name}, {"passed", passed}, {"result", o.result},
                              {"failed_claims", o.failed_claims}};
        if (!g.no_timestamp) doc["timestamp"] = utc_timestamp();
        body = doc.dump(2) + "\n";
    }

    if (g.output.empty()) {
        out << body;
    } else {
        std::ofstream f(g.output, std::ios::binary);
        if (!f) {
            err << "siegel_verify: cannot open " << g.output << " for writing\n";
            return kExitInvalidConfig;
        }
        f << body;
    }

    for (const auto& c : o.failed_claims)
        err << "siegel_verify " << name << ": verification failed: claim " << c << " (" << describe_claim(c)
            << ")\n";
    return passed ? kExitPass : kExitVerificationFailure;
}

}  // namespace siegel
