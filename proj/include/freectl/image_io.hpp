#pragma once

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "freectl/tensor.hpp"

namespace freectl {

// Images move through the pipeline as [H, W, C] tensors in [0, 1]. On disk
// they are binary PPM (P6, maxval 255).

inline void write_ppm(const std::string& path, const TensorT<float>& img) {
    if (img.rank() != 3 || img.dim(2) != 3) {
        throw std::invalid_argument("write_ppm: expected [H,W,3] image, got " + shape_str(img));
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    const int h = img.dim(0), w = img.dim(1);
    f << "P6\n" << w << " " << h << "\n255\n";
    std::vector<unsigned char> row(static_cast<size_t>(w) * 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                float v = img(y, x, c);
                if (v < 0.f) v = 0.f;
                if (v > 1.f) v = 1.f;
                row[static_cast<size_t>(x) * 3 + c] =
                    static_cast<unsigned char>(std::lround(v * 255.f));
            }
        }
        f.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

inline TensorT<float> read_ppm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::string magic;
    f >> magic;
    if (magic != "P6") throw std::runtime_error("not a P6 PPM: " + path);
    auto next_int = [&f, &path]() {
        // skip whitespace and '#' comment lines between header fields
        int c = f.peek();
        while (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#') {
            if (c == '#') {
                std::string line;
                std::getline(f, line);
            } else {
                f.get();
            }
            c = f.peek();
        }
        int v;
        if (!(f >> v)) throw std::runtime_error("bad PPM header: " + path);
        return v;
    };
    const int w = next_int();
    const int h = next_int();
    const int maxval = next_int();
    if (maxval != 255) throw std::runtime_error("unsupported PPM maxval (want 255): " + path);
    f.get();  // single whitespace after maxval
    TensorT<float> img({h, w, 3});
    std::vector<unsigned char> buf(static_cast<size_t>(w) * h * 3);
    f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (f.gcount() != static_cast<std::streamsize>(buf.size())) {
        throw std::runtime_error("truncated PPM payload: " + path);
    }
    for (int64_t i = 0; i < img.numel(); ++i) img[i] = static_cast<float>(buf[static_cast<size_t>(i)]) / 255.f;
    return img;
}

// [0,1] display range <-> [-1,1] model range
inline TensorT<float> to_model_range(const TensorT<float>& img01) {
    TensorT<float> out = img01;
    for (int64_t i = 0; i < out.numel(); ++i) out[i] = out[i] * 2.f - 1.f;
    return out;
}

inline TensorT<float> to_display_range(const TensorT<float>& img11) {
    TensorT<float> out = img11;
    for (int64_t i = 0; i < out.numel(); ++i) out[i] = (out[i] + 1.f) * 0.5f;
    return out;
}

}  // namespace freectl
