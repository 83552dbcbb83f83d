// wienertool: command-line front end for the membership-criteria engine and
// the numerical certificate harnesses.
//
// Subcommands: criteria, region, bernstein, hardy, gallery, norms, anorm.
// Exit codes: 0 certified/pass, 1 negative, 2 inconclusive, 3 usage error.

#include "wiener/bernstein.hpp"
#include "wiener/criteria.hpp"
#include "wiener/field.hpp"
#include "wiener/fourier.hpp"
#include "wiener/gallery.hpp"
#include "wiener/hardy.hpp"
#include "wiener/rng.hpp"
#include "wiener/serialize.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace wiener;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Config handling: flat key=value lines, '#' comments, unknown keys rejected.
// Typed getters materialize defaults back into the map so every emitted report
// embeds a complete, re-runnable configuration.
// ---------------------------------------------------------------------------

bool key_allowed(const std::string& cmd, const std::string& key) {
    static const std::map<std::string, std::set<std::string>> fixed = {
        {"criteria",
         {"d", "p_strict", "p", "q", "r", "beta", "a2d_p", "gamma_all", "radial",
          "radial_smoothness", "bounded", "bounded_weight_max", "seed"}},
        {"region", {"rule", "d", "r", "p_min", "p_max", "p_step", "q_min", "q_max", "q_step", "seed"}},
        {"bernstein",
         {"function", "field", "d", "halfwidth", "n", "scales", "scales1", "scales2", "scales3",
          "shells", "delta", "seed"}},
        {"hardy",
         {"mode", "function", "field", "d", "halfwidth", "n", "q", "Q", "h", "axes", "trials",
          "h_list", "h_dyadic", "generator", "level_min", "level_max", "bumps", "min_width",
          "tolerance", "seed"}},
        {"gallery", {"function", "d", "seed"}},
        {"norms", {"function", "field", "d", "halfwidth", "n", "p", "seed"}},
        {"anorm",
         {"function", "field", "d", "R", "max_spacing", "conv_threshold", "grow_threshold",
          "budget", "seed"}},
    };
    auto it = fixed.find(cmd);
    if (it != fixed.end() && it->second.count(key)) return true;
    if (cmd == "criteria") {
        static const std::regex weight_re("^(p|gamma)(1[0-6]|[0-9])$");
        static const std::regex eta_re("^(p|gamma)_[01]{1,16}$");
        if (std::regex_match(key, weight_re) || std::regex_match(key, eta_re)) return true;
    }
    return false;
}

class RunConfig {
public:
    explicit RunConfig(std::string command) : command_(std::move(command)) {}

    const std::string& command() const { return command_; }

    void set_checked(const std::string& key, const std::string& value, const std::string& where) {
        if (!key_allowed(command_, key))
            throw UsageError("unknown key '" + key + "' for subcommand '" + command_ + "' (" + where +
                             ")");
        kv_[key] = value;
    }

    void load_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw UsageError("cannot open config file: " + path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(is, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            auto last = line.find_last_not_of(" \t\r");
            line = line.substr(first, last - first + 1);
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
            std::string key = line.substr(0, eq), value = line.substr(eq + 1);
            if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
            set_checked(key, value, path + ":" + std::to_string(line_no));
        }
    }

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string get_str(const std::string& key, const std::string& def) {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            kv_[key] = def;
            return def;
        }
        return it->second;
    }
    std::string require_str(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw UsageError("missing required key '" + key + "'");
        return it->second;
    }

    long long get_int(const std::string& key, long long def) {
        if (!has(key)) {
            kv_[key] = std::to_string(def);
            return def;
        }
        return parse_int(key);
    }
    long long require_int(const std::string& key) {
        if (!has(key)) throw UsageError("missing required key '" + key + "'");
        return parse_int(key);
    }

    double get_double(const std::string& key, double def) {
        if (!has(key)) {
            kv_[key] = csv_double(def);
            return def;
        }
        return parse_double(key);
    }

    Exponent get_exponent(const std::string& key, const std::string& def) {
        std::string s = get_str(key, def);
        try {
            return parse_exponent(s);
        } catch (const std::exception& e) {
            throw UsageError("key '" + key + "': " + e.what());
        }
    }
    Exponent require_exponent(const std::string& key) {
        std::string s = require_str(key);
        try {
            return parse_exponent(s);
        } catch (const std::exception& e) {
            throw UsageError("key '" + key + "': " + e.what());
        }
    }
    Rational require_rational(const std::string& key) {
        std::string s = require_str(key);
        try {
            return parse_rational(s);
        } catch (const std::exception& e) {
            throw UsageError("key '" + key + "': " + e.what());
        }
    }

    bool get_bool(const std::string& key, bool def) {
        std::string s = get_str(key, def ? "true" : "false");
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw UsageError("key '" + key + "': expected true/false, got '" + s + "'");
    }

    std::vector<std::string> split_list(const std::string& key) const {
        std::vector<std::string> out;
        auto it = kv_.find(key);
        if (it == kv_.end()) return out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(item);
        return out;
    }

    Json to_json() const {
        Json j = Json::object();
        for (const auto& [k, v] : kv_) j[k] = v;
        return j;
    }

private:
    long long parse_int(const std::string& key) const {
        const std::string& s = kv_.at(key);
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw UsageError("key '" + key + "': expected integer, got '" + s + "'");
        }
    }
    double parse_double(const std::string& key) const {
        const std::string& s = kv_.at(key);
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw UsageError("key '" + key + "': expected number, got '" + s + "'");
        }
    }

    std::string command_;
    std::map<std::string, std::string> kv_;
};

struct GlobalOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool csv = false;
    bool json = false;
    std::vector<std::string> overrides;  // key=value
};

RunConfig make_config(const std::string& cmd, const GlobalOptions& g) {
    RunConfig cfg(cmd);
    if (!g.config_path.empty()) cfg.load_file(g.config_path);
    for (const std::string& kv : g.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw UsageError("positional arguments must be key=value, got '" + kv + "'");
        cfg.set_checked(kv.substr(0, eq), kv.substr(eq + 1), "command line");
    }
    if (g.seed) cfg.set_checked("seed", std::to_string(*g.seed), "command line");
    return cfg;
}

void ensure_out_dir(const std::string& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create output directory: " + dir);
}

void write_text_file(const std::string& dir, const std::string& name, const std::string& content) {
    if (dir.empty()) return;
    std::ofstream os(fs::path(dir) / name);
    if (!os) throw UsageError("cannot write " + name + " under " + dir);
    os << content;
}

Json summary_header(const RunConfig& cfg) {
    Json j;
    j["command"] = cfg.command();
    j["config"] = cfg.to_json();
    return j;
}

// ---------------------------------------------------------------------------
// Shared field/gallery construction
// ---------------------------------------------------------------------------

int default_points(int d) { return d == 1 ? 16385 : d == 2 ? 257 : 65; }

struct FunctionSource {
    std::optional<GalleryFunction> gallery;
    std::optional<SampledField> field;
    int d = 1;

    Complex operator()(std::span<const double> x) const {
        if (gallery) return gallery->value(x);
        return evaluate(*field, x);
    }
};

FunctionSource load_function(RunConfig& cfg) {
    FunctionSource src;
    if (cfg.has("field")) {
        std::string path = cfg.require_str("field");
        SampledField f;
        if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
            f = read_csv_1d(path);
        else
            f = read_wfield(path);
        src.d = f.d;
        src.field = std::move(f);
        return src;
    }
    std::string name = cfg.require_str("function");
    int d = static_cast<int>(cfg.get_int("d", 1));
    src.gallery = make_gallery(name, d);
    src.d = src.gallery->d;
    return src;
}

SampledField materialize_field(RunConfig& cfg, const FunctionSource& src) {
    if (src.field) return *src.field;
    double halfwidth = cfg.get_double("halfwidth", src.gallery->suggested_halfwidth);
    int n = static_cast<int>(cfg.get_int("n", default_points(src.d)));
    if (n < 2) throw UsageError("n must be at least 2");
    return SampledField::sample(src.d, halfwidth, n,
                                [&](std::span<const double> x) { return src.gallery->value(x); });
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

std::optional<Exponent> eta_exponent(RunConfig& cfg, const EtaVector& eta) {
    std::string by_eta = "p_" + eta.str();
    if (cfg.has(by_eta)) return cfg.require_exponent(by_eta);
    std::string by_weight = "p" + std::to_string(eta.weight());
    if (cfg.has(by_weight)) return cfg.require_exponent(by_weight);
    return std::nullopt;
}

CriteriaBundle build_bundle(RunConfig& cfg) {
    CriteriaBundle bundle;
    int d = static_cast<int>(cfg.require_int("d"));
    if (d < 1 || d > kMaxTableDim) throw UsageError("d must be in 1..16");
    bundle.dim = d;
    auto etas = enumerate_etas(d);

    std::set<std::uint32_t> bounded;
    for (const std::string& bits : cfg.split_list("bounded")) {
        std::vector<int> entries;
        for (char c : bits) {
            if (c != '0' && c != '1') throw UsageError("bounded: expected 0/1 strings");
            entries.push_back(c - '0');
        }
        if (static_cast<int>(entries.size()) != d)
            throw UsageError("bounded: eta string length must equal d");
        bounded.insert(EtaVector::from_entries(entries).bits());
    }
    if (cfg.has("bounded_weight_max")) {
        long long w = cfg.require_int("bounded_weight_max");
        for (const EtaVector& eta : etas)
            if (eta.weight() <= w) bounded.insert(eta.bits());
    }

    if (cfg.has("p0") || cfg.has(std::string("p_") + EtaVector::zero(d).str())) {
        ExponentAssignment a;
        a.d = d;
        a.bounded = bounded;
        a.table.resize(std::size_t(1) << d);
        for (const EtaVector& eta : etas) {
            auto e = eta_exponent(cfg, eta);
            if (!e && !eta.is_zero() && bounded.count(eta.bits())) e = Exponent::infinity();
            if (!e)
                throw UsageError("missing exponent for eta " + eta.str() + " (provide p" +
                                 std::to_string(eta.weight()) + ", p_" + eta.str() +
                                 ", or a bounded flag)");
            a.table[eta.bits()] = *e;
        }
        bundle.assignment = std::move(a);
    }

    if (cfg.has("p_strict")) bundle.thm2prime_p = cfg.require_exponent("p_strict");
    if (cfg.has("a2d_p")) bundle.a2d_p = cfg.require_exponent("a2d_p");

    bool any_gamma = cfg.has("gamma_all");
    for (const EtaVector& eta : etas)
        any_gamma = any_gamma || cfg.has("gamma" + std::to_string(eta.weight())) ||
                    cfg.has("gamma_" + eta.str());
    if (any_gamma) {
        DecayAssignment gam;
        gam.d = d;
        gam.gamma.resize(std::size_t(1) << d);
        for (const EtaVector& eta : etas) {
            std::string by_eta = "gamma_" + eta.str();
            std::string by_weight = "gamma" + std::to_string(eta.weight());
            if (cfg.has(by_eta))
                gam.gamma[eta.bits()] = cfg.require_rational(by_eta);
            else if (cfg.has(by_weight))
                gam.gamma[eta.bits()] = cfg.require_rational(by_weight);
            else if (cfg.has("gamma_all"))
                gam.gamma[eta.bits()] = cfg.require_rational("gamma_all");
            else
                throw UsageError("missing decay order for eta " + eta.str());
        }
        bundle.decay = std::move(gam);
    }

    if (cfg.get_bool("radial", false)) {
        RadialAssignment r;
        r.d = d;
        r.smoothness_declared = cfg.get_bool("radial_smoothness", false);
        for (int j = 0; j <= d; ++j) {
            std::string key = "p" + std::to_string(j);
            if (!cfg.has(key)) throw UsageError("radial assignment needs " + key);
            r.p.push_back(cfg.require_exponent(key));
        }
        bundle.radial = std::move(r);
    }

    if (cfg.has("beta")) {
        PureDerivativeOrders o;
        o.d = d;
        for (const std::string& s : cfg.split_list("beta")) {
            try {
                o.beta.push_back(std::stoll(s));
            } catch (const std::exception&) {
                throw UsageError("beta: expected comma-separated integers");
            }
        }
        if (static_cast<int>(o.beta.size()) != d) throw UsageError("beta: need exactly d orders");
        bundle.pure_orders = std::move(o);
    }

    if (cfg.has("r")) {
        bundle.r = cfg.require_int("r");
        bool have_pure = true;
        for (int j = 0; j <= d; ++j) have_pure = have_pure && cfg.has("p" + std::to_string(j));
        if (have_pure) {
            Theorem213Params t;
            t.d = d;
            t.r = *bundle.r;
            t.p0 = cfg.require_exponent("p0");
            for (int j = 1; j <= d; ++j) t.p.push_back(cfg.require_exponent("p" + std::to_string(j)));
            bundle.t213 = std::move(t);
        }
    }

    if (cfg.has("p") && cfg.has("q"))
        bundle.pq = std::make_pair(cfg.require_exponent("p"), cfg.require_exponent("q"));

    return bundle;
}

int cmd_criteria(RunConfig& cfg, const GlobalOptions& g) {
    CriteriaBundle bundle = build_bundle(cfg);
    std::vector<CriterionVerdict> verdicts = run_all(bundle);
    if (verdicts.empty())
        throw UsageError(
            "config supplies no rule inputs (need exponents p0.., gamma.., beta, r, or p/q)");
    OverallOutcome outcome = overall_outcome(verdicts);
    int exit_code = outcome == OverallOutcome::certified  ? 0
                    : outcome == OverallOutcome::negative ? 1
                                                          : 2;
    std::ostringstream lines;
    for (const CriterionVerdict& v : verdicts) lines << to_json(v).dump() << "\n";
    Json summary = summary_header(cfg);
    summary["overall"] = to_string(outcome);
    summary["exit_code"] = exit_code;
    lines << summary.dump() << "\n";
    std::cout << lines.str();
    if (!g.out_dir.empty()) {
        Json arr = Json::array();
        for (const CriterionVerdict& v : verdicts) arr.push_back(to_json(v));
        Json file = summary;
        file["verdicts"] = arr;
        write_text_file(g.out_dir, "verdicts.json", file.dump(2) + "\n");
    }
    return exit_code;
}

// ---------------------------------------------------------------------------
// region
// ---------------------------------------------------------------------------

int cmd_region(RunConfig& cfg, const GlobalOptions& g) {
    std::string rule = cfg.require_str("rule");
    if (!find_rule(rule)) throw UsageError("unknown rule '" + rule + "'");
    if (rule != "thm4.1" && rule != "thm213b")
        throw UsageError("region sweeps support the (p, q)-parameterized rules thm4.1 and thm213b");
    Rational p_min = cfg.require_rational("p_min"), p_max = cfg.require_rational("p_max"),
             p_step = cfg.require_rational("p_step");
    Rational q_min = cfg.require_rational("q_min"), q_max = cfg.require_rational("q_max"),
             q_step = cfg.require_rational("q_step");
    if (p_step <= 0 || q_step <= 0) throw UsageError("grid steps must be positive");
    int d = static_cast<int>(cfg.get_int("d", 1));
    long long r = rule == "thm213b" ? cfg.require_int("r") : cfg.get_int("r", 1);

    std::ostringstream csv;
    csv << "p,q,status\n";
    for (Rational p = p_min; p <= p_max; p += p_step) {
        for (Rational q = q_min; q <= q_max; q += q_step) {
            std::string status;
            try {
                Exponent pe = Exponent::finite(p), qe = Exponent::finite(q);
                CriterionVerdict v =
                    rule == "thm4.1" ? check_dim1(pe, qe) : check_theorem213b(d, r, pe, qe);
                status = to_string(v.status);
            } catch (const std::exception&) {
                status = "not_applicable";  // grid point outside the rule's domain
            }
            csv << format_rational(p) << "," << format_rational(q) << "," << status << "\n";
        }
    }
    std::cout << csv.str();
    write_text_file(g.out_dir, "region.csv", csv.str());
    return 0;
}

// ---------------------------------------------------------------------------
// bernstein
// ---------------------------------------------------------------------------

ScaleRange parse_scale_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("scales: expected lo..hi, got '" + text + "'");
    try {
        ScaleRange r{std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
        r.validate();
        return r;
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("scales: ") + e.what());
    }
}

int cmd_bernstein(RunConfig& cfg, const GlobalOptions& g) {
    FunctionSource src = load_function(cfg);
    SampledField field = materialize_field(cfg, src);
    TailPolicy policy;
    policy.shells = static_cast<int>(cfg.get_int("shells", 4));
    policy.delta = cfg.get_double("delta", 0.05);

    std::vector<ScaleRange> ranges;
    std::string all = cfg.get_str("scales", "");
    for (int j = 0; j < field.d; ++j) {
        std::string key = "scales" + std::to_string(j + 1);
        if (cfg.has(key))
            ranges.push_back(parse_scale_range(cfg.require_str(key)));
        else if (!all.empty())
            ranges.push_back(parse_scale_range(all));
        else
            throw UsageError("missing scales (scales=lo..hi or per-axis scales1=, scales2=, ...)");
    }

    DyadicReport rep = field.d == 1 ? bernstein_sum_1d(field, ranges[0], policy, g.threads)
                                    : bernstein_sum_nd(field, ranges, policy, g.threads);
    int exit_code = rep.verdict == DyadicVerdict::certified_convergent ? 0
                    : rep.verdict == DyadicVerdict::divergent_trend    ? 1
                                                                       : 2;
    Json out = summary_header(cfg);
    out["report"] = to_json(rep);
    out["exit_code"] = exit_code;
    std::ostringstream csv;
    write_terms_csv(rep, csv);
    if (g.csv)
        std::cout << csv.str();
    else
        std::cout << out.dump() << "\n";
    write_text_file(g.out_dir, "report.json", out.dump(2) + "\n");
    write_text_file(g.out_dir, "terms.csv", csv.str());
    return exit_code;
}

// ---------------------------------------------------------------------------
// hardy
// ---------------------------------------------------------------------------

AxisSet parse_axes(RunConfig& cfg, int d) {
    std::string all;
    for (int j = 1; j <= d; ++j) all += (j > 1 ? "," : "") + std::to_string(j);
    cfg.get_str("axes", all);
    AxisSet axes;
    for (const std::string& s : cfg.split_list("axes")) {
        int axis1;
        try {
            axis1 = std::stoi(s);
        } catch (const std::exception&) {
            throw UsageError("axes: expected comma-separated 1-based indices");
        }
        if (axis1 < 1 || axis1 > d) throw UsageError("axes: index out of range");
        axes.member[static_cast<std::size_t>(axis1 - 1)] = true;
    }
    return axes;
}

std::array<double, 3> parse_steps(RunConfig& cfg, const std::string& key, int d) {
    auto parts = cfg.split_list(key);
    if (parts.empty()) throw UsageError("missing required key '" + key + "'");
    std::array<double, 3> h{0, 0, 0};
    try {
        if (parts.size() == 1) {
            double v = std::stod(parts[0]);
            for (int j = 0; j < d; ++j) h[static_cast<std::size_t>(j)] = v;
        } else {
            if (static_cast<int>(parts.size()) != d)
                throw std::invalid_argument("need one step per axis");
            for (int j = 0; j < d; ++j)
                h[static_cast<std::size_t>(j)] = std::stod(parts[static_cast<std::size_t>(j)]);
        }
    } catch (const std::exception& e) {
        throw UsageError(std::string(key) + ": " + e.what());
    }
    return h;
}

int cmd_hardy(RunConfig& cfg, const GlobalOptions& g) {
    std::string mode = cfg.get_str("mode", "check");
    if (mode == "check") {
        FunctionSource src = load_function(cfg);
        SampledField field = materialize_field(cfg, src);
        AxisSet axes = parse_axes(cfg, field.d);
        Exponent q = cfg.require_exponent("q");
        Exponent Q = cfg.get_exponent("Q", cfg.has("Q") ? cfg.require_str("Q") : q.str());
        std::array<double, 3> h = parse_steps(cfg, "h", field.d);
        HardyReport rep = hardy_check(field, q, Q, h, axes);
        Json out = summary_header(cfg);
        out["report"] = to_json(rep, field.d);
        out["exit_code"] = 0;
        std::cout << out.dump() << "\n";
        write_text_file(g.out_dir, "report.json", out.dump(2) + "\n");
        return 0;
    }
    if (mode == "lemma-star") {
        FunctionSource src = load_function(cfg);
        SampledField field = materialize_field(cfg, src);
        Exponent q = cfg.require_exponent("q");
        std::array<double, 3> h = parse_steps(cfg, "h", field.d);
        double tol = cfg.get_double("tolerance", 1e-2);
        MixedDifferenceBoundReport rep = lemma_star_check(field, q, h);
        int exit_code = rep.ratio <= 1.0 + tol ? 0 : 1;
        Json out = summary_header(cfg);
        out["report"] = to_json(rep);
        out["exit_code"] = exit_code;
        std::cout << out.dump() << "\n";
        write_text_file(g.out_dir, "report.json", out.dump(2) + "\n");
        return exit_code;
    }
    if (mode == "empirical") {
        if (!cfg.has("seed")) throw UsageError("hardy empirical requires --seed");
        std::uint64_t seed = static_cast<std::uint64_t>(cfg.require_int("seed"));
        int d = static_cast<int>(cfg.get_int("d", 1));
        if (d < 1 || d > 3) throw UsageError("d must be 1..3");
        double halfwidth = cfg.get_double("halfwidth", 2.0);
        int n = static_cast<int>(cfg.get_int("n", d == 1 ? 1025 : 129));
        AxisSet axes = parse_axes(cfg, d);
        Exponent q = cfg.require_exponent("q");
        Exponent Q = cfg.get_exponent("Q", cfg.has("Q") ? cfg.require_str("Q") : q.str());
        int trials = static_cast<int>(cfg.get_int("trials", 100));
        std::string generator = cfg.get_str("generator", "steps");
        long long level_min = cfg.get_int("level_min", 3), level_max = cfg.get_int("level_max", 6);
        int bumps = static_cast<int>(cfg.get_int("bumps", 5));
        double min_width = cfg.get_double("min_width", 8 * halfwidth / std::max(1, n - 1));

        std::vector<double> h_list;
        if (cfg.has("h_list")) {
            for (const std::string& s : cfg.split_list("h_list")) h_list.push_back(std::stod(s));
        } else {
            std::string dyadic = cfg.get_str("h_dyadic", "-5..5");
            auto dots = dyadic.find("..");
            if (dots == std::string::npos) throw UsageError("h_dyadic: expected lo..hi");
            int lo = std::stoi(dyadic.substr(0, dots)), hi = std::stoi(dyadic.substr(dots + 2));
            for (int k = lo; k <= hi; ++k) h_list.push_back(std::exp2(k));
        }
        if (h_list.empty()) throw UsageError("empty window list");

        Rng rng(seed);
        double sup = 0;
        std::ostringstream csv;
        csv << "trial,h,ratio\n";
        for (int t = 0; t < trials; ++t) {
            SampledField f =
                generator == "bumps"
                    ? make_bump_field(rng, d, halfwidth, n, bumps, min_width)
                    : make_dyadic_step_field(
                          rng, d, halfwidth, static_cast<int>(rng.uniform_int(level_min, level_max)),
                          n);
            for (double h : h_list) {
                std::array<double, 3> hv{h, h, h};
                double ratio = hardy_check(f, q, Q, hv, axes).ratio;
                sup = std::max(sup, ratio);
                csv << t << "," << csv_double(h) << "," << csv_double(ratio) << "\n";
            }
        }
        Json out = summary_header(cfg);
        out["report"] = Json{{"sup_ratio", sup}, {"trials", trials}, {"windows", h_list.size()}};
        out["exit_code"] = 0;
        if (g.csv)
            std::cout << csv.str();
        else
            std::cout << out.dump() << "\n";
        write_text_file(g.out_dir, "report.json", out.dump(2) + "\n");
        write_text_file(g.out_dir, "trials.csv", csv.str());
        return 0;
    }
    throw UsageError("hardy mode must be check, lemma-star, or empirical");
}

// ---------------------------------------------------------------------------
// gallery
// ---------------------------------------------------------------------------

Json range_json(const LebesgueRange& r) {
    if (r.empty) return Json{{"empty", true}};
    return Json{{"empty", false}, {"greater_than", format_rational(r.threshold)}};
}

int cmd_gallery(RunConfig& cfg, const GlobalOptions& g) {
    std::string name = cfg.require_str("function");
    int d = static_cast<int>(cfg.get_int("d", 1));
    GalleryFunction fn = make_gallery(name, d);
    Json out = summary_header(cfg);
    Json rep;
    rep["name"] = fn.name;
    rep["d"] = fn.d;
    rep["known_status"] = to_string(fn.known_status);
    rep["decided_by"] = fn.decided_by;
    if (fn.m_params) {
        const ModelParams& p = *fn.m_params;
        rep["params"] = Json{{"alpha", format_rational(p.alpha)},
                             {"beta", format_rational(p.beta)},
                             {"cutoff_inner", p.cutoff_inner},
                             {"cutoff_outer", p.cutoff_outer}};
        rep["lp_range"] = range_json(m_hypothesis_exponents(p, EtaVector::zero(p.d)));
        rep["top_derivative_lq_range"] = range_json(m_hypothesis_exponents(p, EtaVector::ones(p.d)));
    }
    int exit_code = fn.known_status == MembershipStatus::in_A       ? 0
                    : fn.known_status == MembershipStatus::not_in_A ? 1
                                                                    : 2;
    out["report"] = rep;
    out["exit_code"] = exit_code;
    std::cout << out.dump() << "\n";
    write_text_file(g.out_dir, "report.json", out.dump(2) + "\n");
    return exit_code;
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

int cmd_norms(RunConfig& cfg, const GlobalOptions& g) {
    FunctionSource src = load_function(cfg);
    SampledField field = materialize_field(cfg, src);
    auto plist = cfg.split_list("p");
    if (plist.empty()) throw UsageError("missing required key 'p' (comma-separated exponents)");
    Json norms = Json::object();
    std::ostringstream csv;
    csv << "p,norm\n";
    for (const std::string& s : plist) {
        Exponent p = parse_exponent(s);
        double v = lp_norm(field, p);
        norms[p.str()] = v;
        csv << p.str() << "," << csv_double(v) << "\n";
    }
    Json out = summary_header(cfg);
    out["report"] = Json{{"norms", norms}};
    out["exit_code"] = 0;
    if (g.csv)
        std::cout << csv.str();
    else
        std::cout << out.dump() << "\n";
    write_text_file(g.out_dir, "report.json", out.dump(2) + "\n");
    write_text_file(g.out_dir, "norms.csv", csv.str());
    return 0;
}

// ---------------------------------------------------------------------------
// anorm
// ---------------------------------------------------------------------------

int cmd_anorm(RunConfig& cfg, const GlobalOptions& g) {
    FunctionSource src = load_function(cfg);
    auto rlist = cfg.split_list("R");
    if (rlist.empty()) throw UsageError("missing required key 'R' (comma-separated radii)");
    std::vector<double> Rs;
    for (const std::string& s : rlist) {
        try {
            Rs.push_back(std::stod(s));
        } catch (const std::exception&) {
            throw UsageError("R: expected comma-separated numbers");
        }
    }
    double max_spacing = cfg.get_double("max_spacing", 0x1p-7);
    TrendThresholds thresholds;
    thresholds.converged = cfg.get_double("conv_threshold", 0.05);
    thresholds.growing = cfg.get_double("grow_threshold", 0.10);
    std::size_t budget =
        static_cast<std::size_t>(cfg.get_int("budget", static_cast<long long>(kDefaultMaxPoints)));

    ATrend trend = a_norm_trend([&](std::span<const double> x) { return src(x); }, src.d, Rs,
                                max_spacing, thresholds, budget, g.threads);
    int exit_code = trend.classification == "converged" ? 0
                    : trend.classification == "growing" ? 1
                                                        : 2;
    Json out = summary_header(cfg);
    out["report"] = to_json(trend);
    out["exit_code"] = exit_code;
    std::ostringstream csv;
    write_trend_csv(trend, csv);
    if (g.csv)
        std::cout << csv.str();
    else
        std::cout << out.dump() << "\n";
    write_text_file(g.out_dir, "report.json", out.dump(2) + "\n");
    write_text_file(g.out_dir, "trend.csv", csv.str());
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "membership criteria and numerical certificates for absolutely convergent Fourier "
        "integrals"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "key=value config file");
    app.add_option("--out", g.out_dir, "output directory for JSON/CSV artifacts");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "seed for randomized commands");
    app.add_option("--threads", g.threads, "worker threads for ladder/scale workloads");
    app.add_flag("--csv", g.csv, "prefer CSV on stdout where available");
    app.add_flag("--json", g.json, "prefer JSON on stdout (default)");

    std::map<std::string, int (*)(RunConfig&, const GlobalOptions&)> commands = {
        {"criteria", cmd_criteria}, {"region", cmd_region},   {"bernstein", cmd_bernstein},
        {"hardy", cmd_hardy},       {"gallery", cmd_gallery}, {"norms", cmd_norms},
        {"anorm", cmd_anorm},
    };
    std::map<std::string, std::vector<std::string>> positionals;
    for (auto& [name, fn] : commands) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();  // global flags may follow the subcommand
        sub->add_option("params", positionals[name], "key=value parameter overrides");
        if (name == "hardy") sub->description("modes: check, lemma-star, empirical (pass mode=...)");
        if (name == "gallery") sub->description("pass function=<name>");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;  // usage errors exit 3; --help exits 0
    }

    try {
        for (auto& [name, fn] : commands) {
            if (app.got_subcommand(name)) {
                g.overrides = positionals[name];
                if (seed_opt->count() > 0) g.seed = seed_value;
                // convenience: "hardy lemma-star ..." and "gallery m:alpha=2,..."
                if ((name == "hardy" || name == "gallery") && !g.overrides.empty()) {
                    const std::string& first = g.overrides.front();
                    auto eq = first.find('=');
                    bool bare = eq == std::string::npos ||
                                !key_allowed(name, first.substr(0, eq));
                    if (bare)
                        g.overrides.front() =
                            (name == "hardy" ? "mode=" : "function=") + g.overrides.front();
                }
                ensure_out_dir(g.out_dir);
                RunConfig cfg = make_config(name, g);
                return fn(cfg, g);
            }
        }
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
