#include "heatobs/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <openssl/sha.h>

#include "heatobs/error.hpp"

namespace heatobs {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::vector<std::string>>& section_keys() {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"grid", {"n", "m", "X"}},
        {"dynamics", {"kind", "lambda", "p", "T", "dt", "stride", "blowup_threshold"}},
        {"region", {"L", "r", "placement", "seed"}},
        {"ensemble", {"count", "family", "amp_min", "amp_max", "width", "seed"}},
        {"checks", {"list"}},
        {"output", {"dir", "formats"}},
        {"gronwall", {"A", "B", "alpha", "g0", "T", "samples", "sweep", "seed"}},
        {"convexity", {"samples_file", "T", "h", "Ctilde", "Cbar"}},
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& where, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return d;
    } catch (const std::logic_error&) {
    }
    if (v == "inf") return std::numeric_limits<double>::infinity();
    fail(ErrorKind::ConfigInvalid, where + ": expected a number, got '" + v + "'");
}

std::uint64_t to_u64(const std::string& where, const std::string& v) {
    try {
        std::size_t used = 0;
        const unsigned long long u = std::stoull(v, &used);
        if (trim(v.substr(used)).empty() && v.find('-') == std::string::npos) return u;
    } catch (const std::logic_error&) {
    }
    fail(ErrorKind::ConfigInvalid, where + ": expected a nonnegative integer, got '" + v + "'");
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"semigroup",   "smoothing",   "frequency", "convexity",
                                                "interpolation", "observation", "stability", "probe_uc",
                                                "gronwall"};
    return names;
}

const std::vector<std::string>& check_keys(const std::string& suite) {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"semigroup", {"fields", "times", "tol"}},
        {"smoothing", {"q", "width", "window_lo", "window_hi", "min_slope", "sigma"}},
        {"frequency", {"h", "window_fraction", "j", "slack", "identity_tol", "pairs"}},
        {"convexity", {"inflate", "pairs"}},
        {"interpolation", {"tol", "holdout", "inflate"}},
        {"observation", {"slack"}},
        {"stability", {"delta", "holdout", "inflate"}},
        {"probe_uc", {"eps"}},
        {"gronwall", {}},
    };
    const auto it = keys.find(suite);
    require(it != keys.end(), ErrorKind::ConfigInvalid, "unknown check '" + suite + "'");
    return it->second;
}

double ExperimentConfig::check_double(const std::string& check, const std::string& key, double fallback) const {
    const auto s = check_settings.find(check);
    if (s == check_settings.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : to_double("check." + check + "." + key, k->second);
}

std::size_t ExperimentConfig::check_size(const std::string& check, const std::string& key, std::size_t fallback) const {
    const auto s = check_settings.find(check);
    if (s == check_settings.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : static_cast<std::size_t>(to_u64("check." + check + "." + key, k->second));
}

std::vector<double> ExperimentConfig::check_list(const std::string& check, const std::string& key,
                                                 const std::vector<double>& fallback) const {
    const auto s = check_settings.find(check);
    if (s == check_settings.end()) return fallback;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return fallback;
    std::vector<double> out;
    for (const auto& item : split_list(k->second)) out.push_back(to_double("check." + check + "." + key, item));
    return out;
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.checks = suite_names();
    return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        fail(ErrorKind::ConfigInvalid, std::string("config syntax: ") + e.what());
    }

    ExperimentConfig cfg = default_config();
    for (const auto& [section, body] : tree) {
        if (!body.data().empty())
            fail(ErrorKind::ConfigInvalid, "key '" + section + "' outside any section");
        const bool is_check = section.rfind("check.", 0) == 0;
        std::vector<std::string> allowed;
        if (is_check) {
            allowed = check_keys(section.substr(6));
        } else {
            const auto it = section_keys().find(section);
            require(it != section_keys().end(), ErrorKind::ConfigInvalid, "unknown section [" + section + "]");
            allowed = it->second;
        }
        for (const auto& [key, node] : body) {
            require(std::find(allowed.begin(), allowed.end(), key) != allowed.end(), ErrorKind::ConfigInvalid,
                    "unknown key '" + key + "' in [" + section + "]");
            const std::string v = trim(node.data());
            const std::string where = section + "." + key;
            if (is_check) {
                cfg.check_settings[section.substr(6)][key] = v;
            } else if (section == "grid") {
                if (key == "n") cfg.grid.n = static_cast<int>(to_u64(where, v));
                if (key == "m") cfg.grid.m = static_cast<std::size_t>(to_u64(where, v));
                if (key == "X") cfg.grid.X = to_double(where, v);
            } else if (section == "dynamics") {
                if (key == "kind") {
                    try {
                        cfg.f.kind = nonlinearity_kind_from_string(v);
                    } catch (const Error& e) {
                        fail(ErrorKind::ConfigInvalid, where + ": " + e.detail());
                    }
                }
                if (key == "lambda") cfg.f.lambda = to_double(where, v);
                if (key == "p") cfg.f.p = to_double(where, v);
                if (key == "T") cfg.T = to_double(where, v);
                if (key == "dt") cfg.dt = to_double(where, v);
                if (key == "stride") cfg.stride = static_cast<std::size_t>(to_u64(where, v));
                if (key == "blowup_threshold") cfg.blowup_threshold = to_double(where, v);
            } else if (section == "region") {
                if (key == "L") cfg.L = to_double(where, v);
                if (key == "r") cfg.r = to_double(where, v);
                if (key == "placement") {
                    try {
                        cfg.placement = placement_from_string(v);
                    } catch (const Error& e) {
                        fail(ErrorKind::ConfigInvalid, where + ": " + e.detail());
                    }
                }
                if (key == "seed") cfg.region_seed = to_u64(where, v);
            } else if (section == "ensemble") {
                if (key == "count") cfg.ensemble.count = static_cast<std::size_t>(to_u64(where, v));
                if (key == "family") cfg.ensemble.family = v;
                if (key == "amp_min") cfg.ensemble.amp_min = to_double(where, v);
                if (key == "amp_max") cfg.ensemble.amp_max = to_double(where, v);
                if (key == "width") cfg.ensemble.width = to_double(where, v);
                if (key == "seed") cfg.ensemble.seed = to_u64(where, v);
            } else if (section == "checks") {
                cfg.checks = split_list(v);
            } else if (section == "output") {
                if (key == "dir") cfg.output.dir = v;
                if (key == "formats") cfg.output.formats = split_list(v);
            } else if (section == "gronwall") {
                auto& g = cfg.gronwall;
                if (key == "A") g.A = to_double(where, v);
                if (key == "B") g.B = to_double(where, v);
                if (key == "alpha") g.alpha = to_double(where, v);
                if (key == "g0") g.g0 = to_double(where, v);
                if (key == "T") g.T = to_double(where, v);
                if (key == "samples") g.samples = static_cast<std::size_t>(to_u64(where, v));
                if (key == "sweep") g.sweep = static_cast<std::size_t>(to_u64(where, v));
                if (key == "seed") g.seed = to_u64(where, v);
            } else if (section == "convexity") {
                auto& c = cfg.convexity;
                if (key == "samples_file") c.samples_file = v;
                if (key == "T") c.T = to_double(where, v);
                if (key == "h") c.h = to_double(where, v);
                if (key == "Ctilde") c.Ctilde = to_double(where, v);
                if (key == "Cbar") c.Cbar = to_double(where, v);
            }
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::ConfigInvalid, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const ExperimentConfig& cfg) {
    GridSpec::make(cfg.grid.n, cfg.grid.m, cfg.grid.X);
    validate(cfg.f);
    require(cfg.T > 0.0 && cfg.dt > 0.0 && cfg.dt <= cfg.T, ErrorKind::InvalidParameter, "need 0 < dt <= T");
    require(cfg.stride >= 1, ErrorKind::InvalidParameter, "snapshot stride must be >= 1");
    const double steps = cfg.T / cfg.dt;
    require(std::abs(steps - std::round(steps)) <= 1e-9 * steps &&
                static_cast<std::size_t>(std::llround(steps)) % cfg.stride == 0,
            ErrorKind::InvalidParameter, "T must be a multiple of stride*dt");
    require(cfg.blowup_threshold > 0.0, ErrorKind::InvalidParameter, "blow-up threshold must be positive");
    const ObservationRegion region = build_region(cfg.grid, cfg.L, cfg.r, cfg.placement, cfg.region_seed);
    require_embedded_balls(region);

    const auto& e = cfg.ensemble;
    require(e.count >= 5, ErrorKind::ConfigInvalid, "ensemble.count must be >= 5");
    require(e.family == "gaussian" || e.family == "band_limited", ErrorKind::ConfigInvalid,
            "ensemble.family must be gaussian or band_limited");
    require(e.amp_min > 0.0 && e.amp_max >= e.amp_min, ErrorKind::ConfigInvalid, "need 0 < amp_min <= amp_max");
    require(e.width > 0.0, ErrorKind::ConfigInvalid, "ensemble.width must be positive");

    for (const auto& name : cfg.checks)
        require(std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end(),
                ErrorKind::ConfigInvalid, "unknown check '" + name + "'");
    for (const auto& [name, _] : cfg.check_settings) check_keys(name);
    if (std::find(cfg.checks.begin(), cfg.checks.end(), "stability") != cfg.checks.end())
        require_subcritical_exponent(cfg.f, cfg.grid.n);
    for (const auto& fmt_name : cfg.output.formats)
        require(fmt_name == "json" || fmt_name == "csv", ErrorKind::ConfigInvalid,
                "unknown output format '" + fmt_name + "'");
    require(!cfg.output.dir.empty(), ErrorKind::ConfigInvalid, "output.dir is empty");
    require(cfg.tol_scale > 0.0, ErrorKind::ConfigInvalid, "tolerance scale must be positive");

    const auto& g = cfg.gronwall;
    require(g.A > 0.0 && g.alpha > 0.0 && g.T > 0.0 && g.B >= 0.0 && g.g0 >= 0.0, ErrorKind::InvalidParameter,
            "gronwall needs A, alpha, T > 0 and B, g0 >= 0");
    require(g.samples >= 1, ErrorKind::ConfigInvalid, "gronwall.samples must be >= 1");
    require(cfg.convexity.h > 0.0, ErrorKind::InvalidParameter, "convexity.h must be positive");
}

std::string resolved_text(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "[grid]\nn=" << cfg.grid.n << "\nm=" << cfg.grid.m << "\nX=" << fmt(cfg.grid.X) << "\n\n";
    os << "[dynamics]\nkind=" << to_string(cfg.f.kind) << "\nlambda=" << fmt(cfg.f.lambda) << "\np=" << fmt(cfg.f.p)
       << "\nT=" << fmt(cfg.T) << "\ndt=" << fmt(cfg.dt) << "\nstride=" << cfg.stride
       << "\nblowup_threshold=" << fmt(cfg.blowup_threshold) << "\n\n";
    os << "[region]\nL=" << fmt(cfg.L) << "\nr=" << fmt(cfg.r) << "\nplacement=" << to_string(cfg.placement)
       << "\nseed=" << cfg.region_seed << "\n\n";
    const auto& e = cfg.ensemble;
    os << "[ensemble]\ncount=" << e.count << "\nfamily=" << e.family << "\namp_min=" << fmt(e.amp_min)
       << "\namp_max=" << fmt(e.amp_max) << "\nwidth=" << fmt(e.width) << "\nseed=" << e.seed << "\n\n";
    os << "[checks]\nlist=" << join(cfg.checks) << "\n\n";
    for (const auto& [name, settings] : cfg.check_settings) {
        os << "[check." << name << "]\n";
        for (const auto& [k, v] : settings) os << k << '=' << v << '\n';
        os << '\n';
    }
    os << "[output]\ndir=" << cfg.output.dir << "\nformats=" << join(cfg.output.formats) << "\n\n";
    const auto& g = cfg.gronwall;
    os << "[gronwall]\nA=" << fmt(g.A) << "\nB=" << fmt(g.B) << "\nalpha=" << fmt(g.alpha) << "\ng0=" << fmt(g.g0)
       << "\nT=" << fmt(g.T) << "\nsamples=" << g.samples << "\nsweep=" << g.sweep << "\nseed=" << g.seed << "\n\n";
    const auto& c = cfg.convexity;
    os << "[convexity]\nsamples_file=" << c.samples_file << "\nT=" << fmt(c.T) << "\nh=" << fmt(c.h)
       << "\nCtilde=" << fmt(c.Ctilde) << "\nCbar=" << fmt(c.Cbar) << "\n";
    return os.str();
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
    std::ostringstream os;
    for (unsigned char c : digest) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
    return os.str();
}

}  // namespace heatobs
