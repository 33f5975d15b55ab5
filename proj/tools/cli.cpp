#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "primeset/coordinate.hpp"
#include "primeset/errors.hpp"
#include "primeset/scans.hpp"

namespace primeset::cli {

namespace {

using json = nlohmann::ordered_json;
using namespace primeset::constraints;

constexpr std::uint64_t kListThreshold = 10'000;

struct RunConfig {
    std::uint64_t until = 0;  // 0: command default
    std::vector<std::uint64_t> checkpoints;
    std::string format = "json";
    std::string constraint_file;
    std::string cache;
    unsigned threads = 0;
    bool list = false;
};

/// A usage problem detected after CLI11 parsing succeeded.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string rational_str(const Rational& r) {
    return r.str();
}

json optional_rational(const std::optional<Rational>& r) {
    return r ? json(rational_str(*r)) : json(nullptr);
}

/// Checkpoints sorted ascending and ending at N.
std::pair<std::uint64_t, std::vector<std::uint64_t>> resolve_bound(const RunConfig& cfg, std::uint64_t fallback) {
    std::vector<std::uint64_t> cps = cfg.checkpoints;
    const std::uint64_t n = cfg.until ? cfg.until : (cps.empty() ? fallback : cps.back());
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (i > 0 && cps[i] <= cps[i - 1])
            throw DomainError("checkpoints must be strictly increasing");
        if (cps[i] > n)
            throw DomainError("checkpoint " + std::to_string(cps[i]) + " exceeds --until " + std::to_string(n));
    }
    if (cps.empty() || cps.back() != n)
        cps.push_back(n);
    return {n, cps};
}

/// Loads the cached sieve for exactly this bound, or builds and stores it.
std::optional<primes::SieveTable> cached_sieve(const RunConfig& cfg, std::uint64_t bound) {
    if (cfg.cache.empty())
        return std::nullopt;
    if (auto t = primes::SieveTable::load(cfg.cache, bound))
        return t;
    primes::SieveTable t(bound);
    t.save(cfg.cache);
    return t;
}

ScanOptions scan_options(const RunConfig& cfg, const std::optional<primes::SieveTable>& table) {
    ScanOptions o;
    o.threads = cfg.threads;
    o.sieve = table ? &*table : nullptr;
    return o;
}

json checkpoints_json(const std::vector<Checkpoint>& cps) {
    json arr = json::array();
    for (const auto& c : cps)
        arr.push_back({{"bound", c.bound}, {"member_count", c.member_count}, {"eligible", c.eligible},
                       {"ratio", c.ratio()}});
    return arr;
}

void put_report(json& j, const DensityReport& r, bool with_members) {
    j["bound"] = r.bound;
    j["prime_count"] = r.prime_count;
    j["excluded_count"] = r.excluded_count;
    j["member_count"] = r.member_count;
    j["empirical_ratio"] = r.empirical_ratio;
    j["predicted"] = optional_rational(r.predicted);
    j["checkpoints"] = checkpoints_json(r.checkpoints);
    j["warnings"] = r.warnings;
    if (with_members)
        j["members"] = r.members;
}

bool strictly_increasing(const std::vector<Checkpoint>& cps) {
    for (std::size_t i = 1; i < cps.size(); ++i)
        if (cps[i].member_count <= cps[i - 1].member_count)
            return false;
    return !cps.empty() && cps.back().member_count > 0;
}

json header(const std::string& command) {
    return json{{"command", command.empty() ? json(nullptr) : json(command)}, {"version", kVersion}};
}

json base_parameters(const RunConfig& cfg, std::uint64_t n, const std::vector<std::uint64_t>& cps) {
    json p{{"until", n}, {"checkpoints", cps}};
    if (!cfg.cache.empty())
        p["cache"] = cfg.cache;
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw DomainError("cannot read constraint file '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// ---- subcommands ----

json cmd_scan(const RunConfig& cfg, const std::vector<std::string>& inline_specs, bool dependent) {
    std::vector<ConstraintSpec> specs;
    if (!cfg.constraint_file.empty())
        specs = parse_constraint_file(read_file(cfg.constraint_file));
    for (const auto& line : inline_specs)
        specs.push_back(ConstraintSpec::parse(line));
    if (specs.empty())
        throw UsageError("scan: no constraints given (use -c or --file)");

    const auto [n, cps] = resolve_bound(cfg, 1'000'000);
    const auto table = cached_sieve(cfg, n);
    ScanOptions opts = scan_options(cfg, table);
    opts.assume_independent = !dependent;
    const bool list = cfg.list || n <= kListThreshold;
    opts.collect_members = list;
    const auto r = scan(specs, n, cps, opts);

    json j = header("scan");
    json params = base_parameters(cfg, n, cps);
    json lines = json::array();
    for (const auto& s : specs)
        lines.push_back(s.to_line());
    params["constraints"] = lines;
    params["assume_independent"] = !dependent;
    j["parameters"] = params;
    put_report(j, r, list);
    const std::uint64_t eligible = r.prime_count - r.excluded_count;
    if (r.predicted && eligible > 0) {
        const double tol = 3.0 / std::sqrt(static_cast<double>(r.prime_count));
        j["tolerance"] = tol;
        j["verdict"] = std::abs(r.empirical_ratio - r.predicted->convert_to<double>()) <= tol ? "PASS" : "FAIL";
    } else {
        j["verdict"] = nullptr;
    }
    return j;
}

std::pair<IntPoly, GroupModel> parse_poly_arg(const std::string& text) {
    const auto colon = text.find(':');
    IntPoly f = IntPoly::parse(text.substr(0, colon));
    if (f.degree() < 1)
        throw ParseError("polynomial '" + text + "' must have degree >= 1");
    GroupModel g = colon == std::string::npos ? GroupModel::symmetric(static_cast<unsigned>(f.degree()))
                                              : GroupModel::parse(text.substr(colon + 1));
    return {std::move(f), std::move(g)};
}

json cmd_fip(const RunConfig& cfg, std::uint64_t mmax, const std::vector<std::int64_t>& dbar,
             const std::vector<std::string>& poly_args, bool no_poly) {
    std::vector<std::pair<IntPoly, GroupModel>> polys;
    if (!no_poly)
        for (const auto& a : poly_args)
            polys.push_back(parse_poly_arg(a));
    const auto subbase = build_subbase_G(mmax, dbar, polys);

    RunConfig c = cfg;
    if (c.checkpoints.empty()) {
        const std::uint64_t n = c.until ? c.until : 1'000'000;
        c.checkpoints = {n / 100, n / 10, n};
    }
    const auto [n, cps] = resolve_bound(c, 1'000'000);
    const auto table = cached_sieve(cfg, n);
    const auto fip = fip_report(subbase, cps, scan_options(cfg, table));

    json j = header("fip");
    json params = base_parameters(cfg, n, cps);
    params["mmax"] = mmax;
    params["dbar"] = dbar;
    json pj = json::array();
    for (const auto& [f, g] : polys)
        pj.push_back(f.to_csv() + ":" + g.name());
    params["polys"] = pj;
    j["parameters"] = params;
    json labels = json::array();
    for (const auto& s : subbase)
        labels.push_back(s.label());
    j["subbase"] = labels;
    put_report(j, fip.report, false);
    j["verdict"] = fip.pass ? "PASS" : "FAIL";
    return j;
}

json cmd_artin(const RunConfig& cfg, std::int64_t m) {
    const auto [n, cps] = resolve_bound(cfg, 100'000);
    const auto table = cached_sieve(cfg, n);
    ScanOptions opts = scan_options(cfg, table);
    const bool list = cfg.list || n <= kListThreshold;
    opts.collect_members = list;
    const auto r = artin_scan(m, n, cps, opts);
    json j = header("artin");
    json params = base_parameters(cfg, n, cps);
    params["m"] = m;
    j["parameters"] = params;
    put_report(j, r, list);
    j["verdict"] = strictly_increasing(r.checkpoints) ? "PASS" : "FAIL";
    return j;
}

json cmd_germain(const RunConfig& cfg, bool mod8) {
    const auto [n, cps] = resolve_bound(cfg, 100'000);
    const auto table = cached_sieve(cfg, n);
    const auto r = sophie_germain_scan(n, mod8, cps, scan_options(cfg, table));
    json j = header("germain");
    json params = base_parameters(cfg, n, cps);
    params["mod8"] = mod8;
    j["parameters"] = params;
    put_report(j, r.report, false);
    if (cfg.list || n <= kListThreshold) {
        json pairs = json::array();
        for (const auto& [p, q] : r.pairs)
            pairs.push_back({p, q});
        j["pairs"] = pairs;
    }
    j["verdict"] = mod8 ? json(r.report.warnings.empty() ? "PASS" : "FAIL") : json(nullptr);
    return j;
}

json witness_json(const GpruWitness& w) {
    return {{"p", w.p}, {"zeta", w.zeta}, {"b", w.b}, {"value", w.value}, {"coprime", w.coprime},
            {"primitive", w.primitive}};
}

json cmd_gpru(const RunConfig& cfg) {
    const std::uint64_t n = cfg.until ? cfg.until : 10'000;
    const auto s = gpru_sweep(n);
    json j = header("gpru");
    j["parameters"] = {{"until", n}};
    j["bound"] = s.bound;
    j["primes_checked"] = s.primes_checked;
    j["pairs_checked"] = s.pairs_checked;
    j["counterexamples"] = s.counterexamples;
    j["first_counterexample"] = s.first_counterexample ? witness_json(*s.first_counterexample) : json(nullptr);
    j["verdict"] = s.pass() ? "PASS" : "FAIL";
    return j;
}

json cmd_dedekind(const RunConfig& cfg, const std::string& poly_text, const std::string& group_text,
                  double tolerance) {
    const IntPoly f = IntPoly::parse(poly_text);
    if (f.degree() < 1)
        throw ParseError("polynomial must have degree >= 1");
    const GroupModel g = group_text.empty() ? GroupModel::symmetric(static_cast<unsigned>(f.degree()))
                                            : GroupModel::parse(group_text);
    const std::uint64_t n = cfg.until ? cfg.until : 200'000;
    const auto table = cached_sieve(cfg, n);
    const auto d = dedekind_compare(f, g, n, scan_options(cfg, table));
    json j = header("dedekind");
    json params{{"until", n}, {"polynomial", f.to_csv()}, {"group", g.name()}, {"tolerance", tolerance}};
    if (!cfg.cache.empty())
        params["cache"] = cfg.cache;
    j["parameters"] = params;
    j["polynomial"] = f.pretty();
    j["bound"] = d.bound;
    j["primes_used"] = d.primes_used;
    j["ramified_skipped"] = d.ramified_skipped;
    json rows = json::array();
    for (const auto& row : d.rows)
        rows.push_back({{"type", row.type.to_string()},
                        {"count", row.count},
                        {"empirical", row.empirical.convert_to<double>()},
                        {"predicted", rational_str(row.predicted)}});
    j["rows"] = rows;
    j["linf"] = d.linf;
    j["verdict"] = d.linf < tolerance ? "PASS" : "FAIL";
    return j;
}

json cmd_group(const std::string& name) {
    const GroupModel g = GroupModel::parse(name);
    const auto table = groups::class_table(g);
    json j = header("group");
    j["parameters"] = {{"group", g.name()}};
    j["degree"] = g.degree();
    j["order"] = table.order.convert_to<std::uint64_t>();
    json rows = json::array();
    for (const auto& [type, count] : table.counts)
        rows.push_back({{"type", type.to_string()},
                        {"count", count.convert_to<std::uint64_t>()},
                        {"proportion", rational_str(Rational(count, table.order))}});
    j["rows"] = rows;
    j["derangement_proportion"] = rational_str(groups::derangement_proportion(g));
    j["burnside_average_fixed_points"] = rational_str(groups::burnside_average_fixed_points(g));
    json orbits = json::array();
    for (const auto& orbit : groups::orbits(g)) {
        json o = json::array();
        for (unsigned x : orbit)
            o.push_back(x + 1);
        orbits.push_back(o);
    }
    j["orbits"] = orbits;
    j["transitive"] = orbits.size() == 1;
    return j;
}

json cmd_poly(const std::string& poly_text, unsigned cyclotomic_index, const std::vector<std::uint64_t>& mods,
              const std::string& group_text) {
    if (poly_text.empty() == (cyclotomic_index == 0))
        throw UsageError("poly: give exactly one of -f and --cyclotomic");
    const IntPoly f = cyclotomic_index ? poly::cyclotomic(cyclotomic_index) : IntPoly::parse(poly_text);
    json j = header("poly");
    json params{{"mod", mods}};
    if (cyclotomic_index)
        params["cyclotomic"] = cyclotomic_index;
    else
        params["polynomial"] = poly_text;
    if (!group_text.empty())
        params["group"] = group_text;
    j["parameters"] = params;
    j["coefficients"] = f.to_csv();
    j["polynomial"] = f.pretty();
    j["degree"] = f.degree();
    if (f.degree() >= 1) {
        const poly::PrimeTester tester(f);
        j["discriminant"] = tester.discriminant().str();
        json rows = json::array();
        for (std::uint64_t p : mods) {
            if (!primes::is_prime(p))
                throw DomainError("--mod " + std::to_string(p) + " is not prime");
            json row{{"p", p}, {"ramified", tester.ramified(p)}};
            if (poly::mod_u64(f.leading(), p) == 0) {
                row["type"] = nullptr;
                row["has_root"] = nullptr;
            } else {
                const auto ft = tester.factor_type(p);
                row["type"] = ft.squarefree_mod_p ? groups::CycleType(ft.degrees).to_string() : ft.to_string();
                row["has_root"] = tester.has_root(p);
            }
            rows.push_back(row);
        }
        j["rows"] = rows;
    }
    if (!group_text.empty()) {
        const GroupModel g = GroupModel::parse(group_text);
        if (static_cast<int>(g.degree()) != f.degree())
            throw DomainError("group " + g.name() + " has degree " + std::to_string(g.degree()) +
                              " but the polynomial has degree " + std::to_string(f.degree()));
        json dist = json::object();
        for (const auto& [type, prob] : groups::predicted_factor_distribution(g))
            dist[type.to_string()] = rational_str(prob);
        j["predicted_distribution"] = dist;
    }
    return j;
}

json cmd_sieve_cache(const RunConfig& cfg) {
    if (cfg.cache.empty())
        throw UsageError("sieve-cache: --cache PATH is required");
    if (cfg.until == 0)
        throw UsageError("sieve-cache: --until N is required");
    std::string status = "reused";
    auto t = primes::SieveTable::load(cfg.cache, cfg.until);
    if (!t) {
        t.emplace(cfg.until);
        t->save(cfg.cache);
        status = "built";
    }
    json j = header("sieve-cache");
    j["parameters"] = {{"until", cfg.until}, {"cache", cfg.cache}};
    j["limit"] = t->limit();
    j["prime_count"] = t->count();
    j["status"] = status;
    return j;
}

// ---- output ----

std::string scalar_text(const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string csv_field(const json& v) {
    std::string s = v.is_null() ? "" : scalar_text(v);
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void write_csv(const json& j, std::ostream& out) {
    if (j.contains("error")) {
        out << "error,kind,message\n"
            << "error," << csv_field(j["error"]["kind"]) << "," << csv_field(j["error"]["message"]) << "\n";
        return;
    }
    if (j.contains("checkpoints")) {
        out << "N,count,ratio,predicted\n";
        for (const auto& c : j["checkpoints"])
            out << c["bound"].dump() << "," << c["member_count"].dump() << "," << c["ratio"].dump() << ","
                << csv_field(j["predicted"]) << "\n";
        return;
    }
    if (j.contains("rows") && !j["rows"].empty()) {
        const auto& rows = j["rows"];
        bool first = true;
        for (const auto& [key, _] : rows.front().items()) {
            out << (first ? "" : ",") << key;
            first = false;
        }
        out << "\n";
        for (const auto& row : rows) {
            first = true;
            for (const auto& [key, v] : row.items()) {
                out << (first ? "" : ",") << csv_field(v);
                first = false;
            }
            out << "\n";
        }
        return;
    }
    out << "field,value\n";
    for (const auto& [key, v] : j.items())
        if (v.is_primitive())
            out << key << "," << csv_field(v) << "\n";
}

void write_text(const json& j, std::ostream& out, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, v] : j.items()) {
        if (v.is_object()) {
            out << pad << key << ":\n";
            write_text(v, out, indent + 2);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            out << pad << key << ":\n";
            for (const auto& item : v) {
                out << pad << "  -";
                for (const auto& [k, x] : item.items())
                    out << " " << k << "=" << scalar_text(x);
                out << "\n";
            }
        } else if (v.is_array()) {
            out << pad << key << ":";
            for (const auto& x : v)
                out << " " << (x.is_array() ? x.dump() : scalar_text(x));
            out << "\n";
        } else {
            out << pad << key << ": " << scalar_text(v) << "\n";
        }
    }
}

void emit(const json& j, const std::string& format, std::ostream& out) {
    if (format == "csv")
        write_csv(j, out);
    else if (format == "text")
        write_text(j, out);
    else
        out << j.dump(2) << "\n";
}

json error_record(const std::string& command, const std::string& kind, const std::string& message) {
    json j = header(command);
    j["error"] = {{"kind", kind}, {"message", message}};
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Prime constraint sets: density scans and desk checks", "primeset"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--until", cfg.until, "Upper bound N for the scan")->check(CLI::PositiveNumber);
    app.add_option("--checkpoints", cfg.checkpoints, "Comma-separated intermediate bounds")->delimiter(',');
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--cache", cfg.cache, "Sieve cache file");
    app.add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)");
    app.add_flag("--list", cfg.list, "Always list member primes");

    std::vector<std::string> inline_specs;
    bool dependent = false;
    auto* scan_cmd = app.add_subcommand("scan", "Density of primes satisfying every constraint");
    scan_cmd->add_option("-c,--constraint", inline_specs, "Constraint line, e.g. \"T -8\"")->allow_extra_args(false);
    scan_cmd->add_option("--file", cfg.constraint_file, "Constraint file, one per line");
    scan_cmd->add_flag("--dependent", dependent, "Do not multiply individual predictions");

    std::uint64_t mmax = 12;
    std::vector<std::int64_t> dbar;
    std::vector<std::string> poly_args{"-1,-1,0,1:S3"};
    bool no_poly = false;
    auto* fip_cmd = app.add_subcommand("fip", "Finite-intersection harness on the subbase");
    fip_cmd->add_option("--mmax", mmax, "Largest m for U_m")->capture_default_str();
    fip_cmd->add_option("--dbar", dbar, "Fundamental discriminants for Tbar_D")->delimiter(',');
    fip_cmd->add_option("--poly", poly_args, "PolyNoRoot member as coeffs[:group]")->capture_default_str();
    fip_cmd->add_flag("--no-poly", no_poly, "Leave out polynomial members");

    std::int64_t m = 0;
    auto* artin_cmd = app.add_subcommand("artin", "Primes for which m is a primitive root");
    artin_cmd->add_option("-m", m, "Base m")->required();

    bool mod8 = false;
    auto* germain_cmd = app.add_subcommand("germain", "Primes p with (p-1)/2 prime");
    germain_cmd->add_flag("--mod8", mod8, "Restrict to p == 3 (mod 8)");

    auto* gpru_cmd = app.add_subcommand("gpru", "Exhaustive primitive-root exponent sweep");

    std::string poly_text, group_text;
    double tolerance = 0.02;
    auto* dedekind_cmd = app.add_subcommand("dedekind", "Factor-type frequencies against a group model");
    dedekind_cmd->add_option("-f", poly_text, "Coefficients, ascending")->required();
    dedekind_cmd->add_option("--group", group_text, "Group model (default S_n)");
    dedekind_cmd->add_option("--tolerance", tolerance, "L-infinity tolerance")->capture_default_str();

    std::string group_name;
    auto* group_cmd = app.add_subcommand("group", "Cycle-type table of a permutation group");
    group_cmd->add_option("name", group_name, "S<n>, A<n> or perms:<images>;...")->required();

    unsigned cyclo = 0;
    std::vector<std::uint64_t> mods;
    std::string poly_group;
    auto* poly_cmd = app.add_subcommand("poly", "Discriminant and factor types of a polynomial");
    poly_cmd->add_option("-f", poly_text, "Coefficients, ascending");
    poly_cmd->add_option("--cyclotomic", cyclo, "Use Phi_n");
    poly_cmd->add_option("--mod", mods, "Primes to reduce at")->delimiter(',');
    poly_cmd->add_option("--group", poly_group, "Group model for the predicted distribution");

    auto* cache_cmd = app.add_subcommand("sieve-cache", "Build or verify a sieve cache file");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    std::string command;
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        for (auto* sub : app.get_subcommands())
            command = sub->get_name();
        err << app.help();
        const std::string format = cfg.format == "csv" || cfg.format == "text" ? cfg.format : "json";
        emit(error_record(command, "UsageError", e.what()), format, out);
        return kUsageError;
    }

    const auto* chosen = app.get_subcommands().front();
    command = chosen->get_name();
    try {
        json record;
        if (chosen == scan_cmd)
            record = cmd_scan(cfg, inline_specs, dependent);
        else if (chosen == fip_cmd)
            record = cmd_fip(cfg, mmax, dbar, poly_args, no_poly);
        else if (chosen == artin_cmd)
            record = cmd_artin(cfg, m);
        else if (chosen == germain_cmd)
            record = cmd_germain(cfg, mod8);
        else if (chosen == gpru_cmd)
            record = cmd_gpru(cfg);
        else if (chosen == dedekind_cmd)
            record = cmd_dedekind(cfg, poly_text, group_text, tolerance);
        else if (chosen == group_cmd)
            record = cmd_group(group_name);
        else if (chosen == poly_cmd)
            record = cmd_poly(poly_text, cyclo, mods, poly_group);
        else if (chosen == cache_cmd)
            record = cmd_sieve_cache(cfg);
        emit(record, cfg.format, out);
        return kOk;
    } catch (const UsageError& e) {
        emit(error_record(command, "UsageError", e.what()), cfg.format, out);
        return kUsageError;
    } catch (const ParseError& e) {
        emit(error_record(command, "ParseError", e.what()), cfg.format, out);
        return kUsageError;
    } catch (const BoundsError& e) {
        emit(error_record(command, "BoundsError", e.what()), cfg.format, out);
        return kDomainError;
    } catch (const ExcludedPrime& e) {
        emit(error_record(command, "ExcludedPrime", e.what()), cfg.format, out);
        return kDomainError;
    } catch (const DomainError& e) {
        emit(error_record(command, "DomainError", e.what()), cfg.format, out);
        return kDomainError;
    } catch (const Inapplicable& e) {
        emit(error_record(command, "Inapplicable", e.what()), cfg.format, out);
        return kDomainError;
    } catch (const std::exception& e) {
        emit(error_record(command, "InternalError", e.what()), cfg.format, out);
        return kFailure;
    }
}

}  // namespace primeset::cli
