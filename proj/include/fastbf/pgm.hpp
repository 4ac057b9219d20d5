#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastbf/image.hpp"

namespace fastbf {

class PgmError : public std::runtime_error {
public:
    PgmError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

class PgmReader {
public:
    explicit PgmReader(const std::vector<std::uint8_t>& bytes) : b_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < b_.size()) {
            if (b_[pos_] == '#') {
                while (pos_ < b_.size() && b_[pos_] != '\n' && b_[pos_] != '\r') ++pos_;
            } else if (std::isspace(b_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long read_uint(const char* what) {
        skip_space_and_comments();
        std::size_t start = pos_;
        if (pos_ >= b_.size()) throw PgmError(std::string("truncated header: missing ") + what, pos_);
        if (!std::isdigit(b_[pos_])) throw PgmError(std::string("malformed header: expected ") + what, pos_);
        long v = 0;
        while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
            v = v * 10 + (b_[pos_] - '0');
            if (v > 1000000000L) throw PgmError(std::string("value too large for ") + what, start);
            ++pos_;
        }
        if (pos_ < b_.size() && !std::isspace(b_[pos_]) && b_[pos_] != '#')
            throw PgmError(std::string("malformed header: bad ") + what, pos_);
        return v;
    }

    std::size_t pos() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }
    std::size_t remaining() const { return b_.size() - pos_; }
    std::uint8_t peek() const { return b_[pos_]; }

private:
    const std::vector<std::uint8_t>& b_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a P2 or P5 PGM with maxval <= 255.
inline Image load_pgm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw PgmError("malformed header: expected magic P2 or P5", 0);
    const bool binary = bytes[1] == '5';
    detail::PgmReader r(bytes);
    r.advance(2);
    if (r.remaining() > 0 && !std::isspace(r.peek()) && r.peek() != '#')
        throw PgmError("malformed header: expected whitespace after magic", r.pos());

    const long w = r.read_uint("width");
    const long h = r.read_uint("height");
    const std::size_t maxval_at = (r.skip_space_and_comments(), r.pos());
    const long maxval = r.read_uint("maxval");
    if (w < 1 || h < 1) throw PgmError("malformed header: zero dimension", maxval_at);
    if (maxval < 1) throw PgmError("malformed header: maxval must be positive", maxval_at);
    if (maxval > 255) throw PgmError("unsupported maxval " + std::to_string(maxval), maxval_at);

    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::vector<double> samples(n);
    if (binary) {
        if (r.remaining() == 0) throw PgmError("truncated payload", r.pos());
        r.advance(1);  // single whitespace byte after maxval
        if (r.remaining() < n)
            throw PgmError("truncated payload: expected " + std::to_string(n) + " bytes, found " +
                               std::to_string(r.remaining()),
                           r.pos());
        const std::size_t base = r.pos();
        for (std::size_t i = 0; i < n; ++i) {
            std::uint8_t v = bytes[base + i];
            if (v > maxval) throw PgmError("sample exceeds maxval", base + i);
            samples[i] = v;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            r.skip_space_and_comments();
            if (r.remaining() == 0) throw PgmError("truncated payload", r.pos());
            const std::size_t at = r.pos();
            long v = r.read_uint("sample");
            if (v > maxval) throw PgmError("sample exceeds maxval", at);
            samples[i] = static_cast<double>(v);
        }
    }
    return Image(static_cast<int>(w), static_cast<int>(h), std::move(samples));
}

/// Encodes as binary P5, maxval 255; samples are clamped then rounded half-up.
inline std::vector<std::uint8_t> save_pgm(const Image& image) {
    std::string header = "P5\n" + std::to_string(image.width()) + " " +
                         std::to_string(image.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + image.size());
    for (double v : image.samples()) out.push_back(static_cast<std::uint8_t>(quantize_intensity(v)));
    return out;
}

inline std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

inline void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline Image load_pgm_file(const std::string& path) { return load_pgm(read_file(path)); }

inline void save_pgm_file(const std::string& path, const Image& image) {
    write_file(path, save_pgm(image));
}

}  // namespace fastbf
