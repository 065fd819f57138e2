#include "ghostproj/io.hpp"

#include <unistd.h>

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

namespace ghostproj::io {

namespace {

constexpr std::array<char, 4> kMatrixMagic{'G', 'F', 'M', '1'};
constexpr std::array<char, 4> kMaskMagic{'G', 'F', 'B', '1'};
constexpr std::array<char, 4> kFeatureMagic{'G', 'F', 'V', '1'};

class Writer {
public:
    void magic(const std::array<char, 4>& m) {
        for (char c : m) out_.push_back(static_cast<std::uint8_t>(c));
    }
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u64(std::uint64_t v) {
        for (int b = 0; b < 8; ++b) out_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    Bytes& bytes() { return out_; }

private:
    Bytes out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    void magic(const std::array<char, 4>& m, const char* what) {
        need(4);
        if (std::memcmp(in_.data() + pos_, m.data(), 4) != 0) throw IoError(std::string("not a ") + what + " file");
        pos_ += 4;
    }
    std::uint8_t u8() {
        need(1);
        return in_[pos_++];
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b) v |= std::uint64_t{in_[pos_ + b]} << (8 * b);
        pos_ += 8;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::span<const std::uint8_t> take(std::size_t n) {
        need(n);
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::size_t remaining() const { return in_.size() - pos_; }
    void finish() const {
        if (pos_ != in_.size()) throw IoError("trailing bytes after payload");
    }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) throw IoError("file is truncated");
    }
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

std::size_t checked_size(std::uint64_t v) {
    if (v == 0 || v > (std::uint64_t{1} << 40)) throw IoError("implausible dimension in header");
    return static_cast<std::size_t>(v);
}

std::size_t checked_product(std::size_t a, std::size_t b) {
    if (a > (std::size_t{1} << 40) / b) throw IoError("implausible dimensions in header");
    return a * b;
}

// Appends `bits` entries (0/1 from `get`) as ceil(bits/8) LSB-first bytes.
template <class Get>
void put_row(Writer& w, std::size_t bits, Get get) {
    for (std::size_t byte = 0; byte < (bits + 7) / 8; ++byte) {
        std::uint8_t v = 0;
        for (std::size_t b = 0; b < 8 && byte * 8 + b < bits; ++b) {
            if (get(byte * 8 + b)) v |= static_cast<std::uint8_t>(1U << b);
        }
        w.u8(v);
    }
}

template <class Set>
void get_row(Reader& r, std::size_t bits, Set set) {
    const auto row = r.take((bits + 7) / 8);
    for (std::size_t c = 0; c < bits; ++c) {
        if ((row[c / 8] >> (c % 8)) & 1U) set(c);
    }
    if (bits % 8 != 0 && (row.back() >> (bits % 8)) != 0) throw IoError("nonzero padding bits in mask row");
}

FeatureMode mode_from_byte(std::uint8_t b) {
    if (b == 0) return FeatureMode::GhostImaging;
    if (b == 1) return FeatureMode::Cytometry;
    throw IoError("unknown mode byte " + std::to_string(b));
}

double parse_double(std::string_view token) {
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
        token.remove_suffix(1);
    }
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
        throw IoError("malformed number '" + std::string(token) + "'");
    }
    return v;
}

bool blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

Bytes encode_matrix(const ImageObject& x) {
    Writer w;
    w.magic(kMatrixMagic);
    w.u64(x.height());
    w.u64(x.width());
    for (double v : x.values()) w.f64(v);
    return std::move(w.bytes());
}

ImageObject decode_matrix(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    r.magic(kMatrixMagic, "GFM1 matrix");
    const std::size_t h = checked_size(r.u64());
    const std::size_t w = checked_size(r.u64());
    const std::size_t n = checked_product(h, w);
    if (r.remaining() != n * 8) throw IoError("GFM1 payload length does not match header");
    std::vector<double> data(n);
    for (double& v : data) v = r.f64();
    r.finish();
    try {
        return ImageObject(h, w, std::move(data));
    } catch (const ValidationError& e) {
        throw IoError(e.what());
    }
}

std::string matrix_to_csv(const ImageObject& x) {
    std::string out;
    for (std::size_t i = 0; i < x.height(); ++i) {
        for (std::size_t j = 0; j < x.width(); ++j) {
            if (j) out += ',';
            out += format_double(x(i, j));
        }
        out += '\n';
    }
    return out;
}

ImageObject matrix_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        std::vector<double> row;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            row.push_back(parse_double(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        rows.push_back(std::move(row));
    }
    try {
        return ImageObject::from_rows(rows);
    } catch (const ValidationError& e) {
        throw IoError(std::string("bad CSV matrix: ") + e.what());
    }
}

Bytes encode_masks(const MaskSet& masks) {
    Writer w;
    w.magic(kMaskMagic);
    w.u8(0);
    w.u64(masks.count());
    w.u64(masks.height());
    w.u64(masks.width());
    w.f64(masks.q());
    w.u64(masks.seed());
    for (std::size_t m = 0; m < masks.count(); ++m) {
        for (std::size_t i = 0; i < masks.height(); ++i) {
            put_row(w, masks.width(), [&](std::size_t j) { return masks.bit(m, i, j); });
        }
    }
    return std::move(w.bytes());
}

Bytes encode_masks(const CytometryMask& mask) {
    Writer w;
    w.magic(kMaskMagic);
    w.u8(1);
    w.u64(mask.columns());
    w.u64(mask.height());
    w.u64(1);
    w.f64(mask.q());
    w.u64(mask.seed());
    for (std::size_t i = 0; i < mask.height(); ++i) {
        put_row(w, mask.columns(), [&](std::size_t c) { return mask.at(i, c); });
    }
    return std::move(w.bytes());
}

AnyMask decode_masks(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    r.magic(kMaskMagic, "GFB1 mask");
    const FeatureMode mode = mode_from_byte(r.u8());
    const std::size_t m = checked_size(r.u64());
    const std::size_t h = checked_size(r.u64());
    const std::size_t w = checked_size(r.u64());
    const double q = r.f64();
    const std::uint64_t seed = r.u64();
    try {
        if (mode == FeatureMode::GhostImaging) {
            const std::size_t n = checked_product(h, w);
            const std::size_t wpp = (n + 63) / 64;
            if (r.remaining() != checked_product(checked_product(m, h), (w + 7) / 8)) {
                throw IoError("GFB1 payload length does not match header");
            }
            std::vector<std::uint64_t> bits(m * wpp, 0);
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t i = 0; i < h; ++i) {
                    get_row(r, w, [&](std::size_t j) {
                        const std::size_t p = i * w + j;
                        bits[k * wpp + (p >> 6)] |= std::uint64_t{1} << (p & 63);
                    });
                }
            }
            r.finish();
            return MaskSet(m, h, w, q, seed, std::move(bits));
        }
        if (w != 1) throw IoError("GFB1 cytometry header must store W = 1");
        const std::size_t wpr = (m + 63) / 64;
        if (r.remaining() != checked_product(h, (m + 7) / 8)) throw IoError("GFB1 payload length does not match header");
        std::vector<std::uint64_t> bits(h * wpr, 0);
        for (std::size_t i = 0; i < h; ++i) {
            get_row(r, m, [&](std::size_t c) { bits[i * wpr + (c >> 6)] |= std::uint64_t{1} << (c & 63); });
        }
        r.finish();
        return CytometryMask(h, m, q, seed, std::move(bits));
    } catch (const ValidationError& e) {
        throw IoError(std::string("bad GFB1 file: ") + e.what());
    }
}

Bytes encode_features(FeatureMode mode, std::span<const double> values) {
    Writer w;
    w.magic(kFeatureMagic);
    w.u8(static_cast<std::uint8_t>(mode));
    w.u64(values.size());
    for (double v : values) w.f64(v);
    return std::move(w.bytes());
}

std::pair<FeatureMode, std::vector<double>> decode_features(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    r.magic(kFeatureMagic, "GFV1 feature");
    const FeatureMode mode = mode_from_byte(r.u8());
    const std::uint64_t n = r.u64();
    if (n > r.remaining() / 8 || r.remaining() != n * 8) throw IoError("GFV1 payload length does not match header");
    std::vector<double> values(static_cast<std::size_t>(n));
    for (double& v : values) v = r.f64();
    r.finish();
    return {mode, std::move(values)};
}

std::string features_to_csv(std::span<const double> values) {
    std::string out;
    for (double v : values) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::vector<double> features_from_csv(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        out.push_back(parse_double(line));
    }
    return out;
}

void write_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
    write_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for " + path.string());
    return data;
}

namespace {

bool starts_with_magic(const Bytes& data, const std::array<char, 4>& magic) {
    return data.size() >= 4 && std::memcmp(data.data(), magic.data(), 4) == 0;
}

bool is_csv_path(const std::filesystem::path& path) { return path.extension() == ".csv"; }

}  // namespace

ImageObject read_matrix(const std::filesystem::path& path) {
    const Bytes data = read_file(path);
    if (starts_with_magic(data, kMatrixMagic)) return decode_matrix(data);
    return matrix_from_csv(std::string(data.begin(), data.end()));
}

void write_matrix(const std::filesystem::path& path, const ImageObject& x) {
    if (is_csv_path(path)) {
        write_atomic(path, matrix_to_csv(x));
    } else {
        write_atomic(path, encode_matrix(x));
    }
}

AnyMask read_masks(const std::filesystem::path& path) { return decode_masks(read_file(path)); }

std::pair<FeatureMode, std::vector<double>> read_features(const std::filesystem::path& path) {
    const Bytes data = read_file(path);
    if (starts_with_magic(data, kFeatureMagic)) return decode_features(data);
    return {FeatureMode::GhostImaging, features_from_csv(std::string(data.begin(), data.end()))};
}

void write_features(const std::filesystem::path& path, FeatureMode mode, std::span<const double> values) {
    if (is_csv_path(path)) {
        write_atomic(path, features_to_csv(values));
    } else {
        write_atomic(path, encode_features(mode, values));
    }
}

}  // namespace ghostproj::io
