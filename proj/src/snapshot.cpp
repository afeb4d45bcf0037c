#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "heatobs/error.hpp"
#include "heatobs/grid.hpp"

namespace heatobs {

namespace {

constexpr std::uint32_t kSnapshotVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 4 + 1 + 8 + 8 + 8;

template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
    std::uint64_t bits = 0;
    if constexpr (std::is_floating_point_v<T>) {
        bits = std::bit_cast<std::uint64_t>(static_cast<double>(value));
    } else {
        bits = static_cast<std::uint64_t>(value);
    }
    for (std::size_t b = 0; b < sizeof(T); ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t offset, std::size_t width) {
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < width; ++b) v |= static_cast<std::uint64_t>(in[offset + b]) << (8 * b);
    return v;
}

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const Field& f) {
    const GridSpec& spec = f.spec();
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + 8 * f.size());
    for (char c : {'H', 'O', 'B', 'S'}) out.push_back(static_cast<std::uint8_t>(c));
    put_le<std::uint32_t>(out, kSnapshotVersion);
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(spec.n));
    put_le<std::uint64_t>(out, spec.m);
    put_le<double>(out, spec.X);
    // absent time tag is stored as NaN
    put_le<double>(out, f.time().value_or(std::numeric_limits<double>::quiet_NaN()));
    for (double v : f.values()) put_le<double>(out, v);
    return out;
}

Field decode_snapshot(std::span<const std::uint8_t> bytes) {
    require(bytes.size() >= kHeaderBytes, ErrorKind::FormatError, "snapshot shorter than its header");
    require(std::memcmp(bytes.data(), "HOBS", 4) == 0, ErrorKind::FormatError, "bad snapshot magic");
    const auto version = static_cast<std::uint32_t>(get_le(bytes, 4, 4));
    require(version == kSnapshotVersion, ErrorKind::FormatError, "unsupported snapshot version " + std::to_string(version));
    const int n = static_cast<int>(bytes[8]);
    const std::uint64_t m = get_le(bytes, 9, 8);
    const double X = std::bit_cast<double>(get_le(bytes, 17, 8));
    const double t = std::bit_cast<double>(get_le(bytes, 25, 8));
    GridSpec spec{n, static_cast<std::size_t>(m), X};
    try {
        validate(spec);
    } catch (const Error& e) {
        fail(ErrorKind::FormatError, "snapshot header: " + e.detail());
    }
    const std::size_t count = spec.size();
    require(bytes.size() == kHeaderBytes + 8 * count, ErrorKind::FormatError, "snapshot payload length mismatch");
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i)
        values[i] = std::bit_cast<double>(get_le(bytes, kHeaderBytes + 8 * i, 8));
    std::optional<double> time;
    if (!std::isnan(t)) time = t;
    return Field(spec, std::move(values), time);
}

void write_snapshot(const Field& f, const std::string& path) {
    const auto bytes = encode_snapshot(f);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::FormatError, "cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    require(static_cast<bool>(out), ErrorKind::FormatError, "write failed for " + path);
}

Field read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::FormatError, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

}  // namespace heatobs
