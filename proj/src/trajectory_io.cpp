#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "heatobs/dynamics.hpp"
#include "heatobs/error.hpp"

namespace heatobs {

namespace fs = std::filesystem;

namespace {

std::string snapshot_name(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%05zu.hobs", k);
    return buf;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double parse_double(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    require(it != kv.end(), ErrorKind::FormatError, "trajectory manifest lacks key '" + key + "'");
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        require(used == it->second.size(), ErrorKind::FormatError, "bad number for '" + key + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(ErrorKind::FormatError, "bad number for '" + key + "': " + it->second);
    }
}

}  // namespace

void write_trajectory(const Trajectory& traj, const std::string& dir) {
    require(!traj.fields.empty(), ErrorKind::InvalidParameter, "empty trajectory");
    fs::create_directories(dir);
    std::ofstream man(fs::path(dir) / "manifest.txt");
    require(static_cast<bool>(man), ErrorKind::FormatError, "cannot write manifest in " + dir);
    man << "n=" << traj.spec.n << '\n'
        << "m=" << traj.spec.m << '\n'
        << "X=" << fmt(traj.spec.X) << '\n'
        << "dt=" << fmt(traj.dt) << '\n'
        << "T=" << fmt(traj.final_time()) << '\n'
        << "fspec.kind=" << to_string(traj.fspec.kind) << '\n'
        << "lambda=" << fmt(traj.fspec.lambda) << '\n'
        << "p=" << fmt(traj.fspec.p) << '\n'
        << "stride=" << traj.stride << '\n';
    for (std::size_t k = 0; k < traj.size(); ++k)
        write_snapshot(traj.fields[k].with_time(traj.times[k]), (fs::path(dir) / snapshot_name(k)).string());
}

Trajectory read_trajectory(const std::string& dir) {
    std::ifstream man(fs::path(dir) / "manifest.txt");
    require(static_cast<bool>(man), ErrorKind::FormatError, "no manifest.txt in " + dir);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(man, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, ErrorKind::FormatError, "manifest line without '=': " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }

    Trajectory traj;
    traj.spec = GridSpec::make(static_cast<int>(parse_double(kv, "n")),
                               static_cast<std::size_t>(parse_double(kv, "m")), parse_double(kv, "X"));
    traj.dt = parse_double(kv, "dt");
    traj.stride = static_cast<std::size_t>(parse_double(kv, "stride"));
    require(kv.count("fspec.kind") != 0, ErrorKind::FormatError, "trajectory manifest lacks key 'fspec.kind'");
    traj.fspec.kind = nonlinearity_kind_from_string(kv["fspec.kind"]);
    traj.fspec.lambda = parse_double(kv, "lambda");
    traj.fspec.p = parse_double(kv, "p");
    const double T = parse_double(kv, "T");

    for (std::size_t k = 0;; ++k) {
        const fs::path path = fs::path(dir) / snapshot_name(k);
        if (!fs::exists(path)) break;
        Field f = read_snapshot(path.string());
        require(f.spec() == traj.spec, ErrorKind::GridMismatch, "snapshot grid differs from manifest: " + path.string());
        require(f.time().has_value(), ErrorKind::FormatError, "snapshot without time tag: " + path.string());
        traj.times.push_back(*f.time());
        traj.fields.push_back(std::move(f));
    }
    require(!traj.fields.empty(), ErrorKind::FormatError, "no snapshots in " + dir);
    require(std::abs(traj.times.back() - T) <= 1e-12 * std::max(1.0, std::abs(T)), ErrorKind::FormatError,
            "last snapshot time does not match manifest T");
    return traj;
}

}  // namespace heatobs
