#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "freectl/tensor.hpp"

namespace freectl {

// CRC-32 (IEEE 802.3, reflected, poly 0xEDB88320). Test vector: "123456789" -> 0xCBF43926.
inline uint32_t crc32(const void* buf, size_t len, uint32_t crc = 0) {
    static const auto table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    const auto* p = static_cast<const unsigned char*>(buf);
    crc = ~crc;
    for (size_t i = 0; i < len; ++i) crc = table[(crc ^ p[i]) & 0xFFu] ^ (crc >> 8);
    return ~crc;
}

// Byte sink that both buffers and checksums; everything written through it is
// covered by the trailing CRC.
class ByteWriter {
public:
    void u8(uint8_t v) { bytes_.push_back(static_cast<char>(v)); }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void i32(int32_t v) { u32(static_cast<uint32_t>(v)); }
    void f32(float v) {
        uint32_t bits;
        std::memcpy(&bits, &v, 4);
        u32(bits);
    }
    void raw(const void* p, size_t n) {
        const char* c = static_cast<const char*>(p);
        bytes_.insert(bytes_.end(), c, c + n);
    }
    void str(const std::string& s) {
        u32(static_cast<uint32_t>(s.size()));
        raw(s.data(), s.size());
    }
    const std::vector<char>& bytes() const { return bytes_; }
    uint32_t crc() const { return crc32(bytes_.data(), bytes_.size()); }

private:
    std::vector<char> bytes_;
};

class ByteReader {
public:
    ByteReader(const char* data, size_t size) : p_(data), end_(data + size), begin_(data) {}

    uint8_t u8() {
        need(1);
        return static_cast<uint8_t>(*p_++);
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(p_[i])) << (8 * i);
        p_ += 4;
        return v;
    }
    int32_t i32() { return static_cast<int32_t>(u32()); }
    float f32() {
        uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    void raw(void* out, size_t n) {
        need(n);
        std::memcpy(out, p_, n);
        p_ += n;
    }
    std::string str() {
        uint32_t n = u32();
        need(n);
        std::string s(p_, p_ + n);
        p_ += n;
        return s;
    }
    size_t consumed() const { return static_cast<size_t>(p_ - begin_); }
    size_t remaining() const { return static_cast<size_t>(end_ - p_); }

private:
    void need(size_t n) const {
        if (remaining() < n) throw std::runtime_error("truncated data while parsing");
    }
    const char* p_;
    const char* end_;
    const char* begin_;
};

// Tensor record framing shared by the checkpoint and query-cache containers:
// {u32 name_len, name bytes, u8 dtype(0=f32), u8 rank, u32 dims[rank], f32 payload}.
inline void write_tensor_record(ByteWriter& w, const std::string& name, const TensorT<float>& t) {
    w.str(name);
    w.u8(0);  // dtype tag: f32
    w.u8(static_cast<uint8_t>(t.rank()));
    for (int i = 0; i < t.rank(); ++i) w.u32(static_cast<uint32_t>(t.dim(i)));
    for (int64_t i = 0; i < t.numel(); ++i) w.f32(t[i]);
}

inline std::pair<std::string, TensorT<float>> read_tensor_record(ByteReader& r) {
    std::string name = r.str();
    const uint8_t dtype = r.u8();
    if (dtype != 0) throw std::runtime_error("unsupported tensor dtype tag " + std::to_string(dtype));
    const int rank = r.u8();
    std::vector<int> shape(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) shape[static_cast<size_t>(i)] = static_cast<int>(r.u32());
    TensorT<float> t(shape);
    for (int64_t i = 0; i < t.numel(); ++i) t[i] = r.f32();
    return {std::move(name), std::move(t)};
}

inline void write_file(const std::string& path, const char* magic, const ByteWriter& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(magic, 4);
    f.write(body.bytes().data(), static_cast<std::streamsize>(body.bytes().size()));
    const uint32_t crc = body.crc();
    char cb[4];
    for (int i = 0; i < 4; ++i) cb[i] = static_cast<char>((crc >> (8 * i)) & 0xFF);
    f.write(cb, 4);
    if (!f) throw std::runtime_error("write failed: " + path);
}

// Reads a container written by write_file, verifying magic and trailing CRC.
inline std::vector<char> read_file_checked(const std::string& path, const char* magic) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<char> all((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (all.size() < 8) throw std::runtime_error("file too short: " + path);
    if (std::memcmp(all.data(), magic, 4) != 0) {
        throw std::runtime_error("bad magic in " + path);
    }
    uint32_t stored = 0;
    for (int i = 0; i < 4; ++i) {
        stored |= static_cast<uint32_t>(static_cast<unsigned char>(all[all.size() - 4 + i])) << (8 * i);
    }
    const uint32_t actual = crc32(all.data() + 4, all.size() - 8);
    if (stored != actual) throw std::runtime_error("CRC mismatch in " + path);
    return {all.begin() + 4, all.end() - 4};
}

}  // namespace freectl
