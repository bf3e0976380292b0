#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "freectl/rng.hpp"
#include "freectl/tensor.hpp"

namespace freectl {

// Synthetic shapes world: one hard-edged colored primitive per image on a
// plain background. Rasterization is deliberately not antialiased so the
// edge-metric ground truth stays exact.

enum class ShapeKind : int { circle = 0, square = 1, triangle = 2 };
enum class ShapeColor : int { red = 0, green = 1, blue = 2, yellow = 3 };

constexpr int kNumShapeKinds = 3;
constexpr int kNumShapeColors = 4;
constexpr int kNumShapeClasses = kNumShapeKinds * kNumShapeColors;  // 12

struct ShapeSpec {
    ShapeKind kind = ShapeKind::circle;
    ShapeColor color = ShapeColor::red;
    int cx = 16;
    int cy = 16;
    int size = 5;          // radius / half-extent, pixels
    float background = 0.f;  // gray shade in [0,1]
};

struct LabeledImage {
    TensorT<float> image;  // [H,W,3] in [0,1]
    int label = 0;         // kind*4 + color, in [0,12)
};

inline int shape_label(const ShapeSpec& s) {
    return static_cast<int>(s.kind) * kNumShapeColors + static_cast<int>(s.color);
}

inline void shape_rgb(ShapeColor c, float rgb[3]) {
    switch (c) {
        case ShapeColor::red: rgb[0] = 1.f; rgb[1] = 0.f; rgb[2] = 0.f; break;
        case ShapeColor::green: rgb[0] = 0.f; rgb[1] = 1.f; rgb[2] = 0.f; break;
        case ShapeColor::blue: rgb[0] = 0.f; rgb[1] = 0.f; rgb[2] = 1.f; break;
        case ShapeColor::yellow: rgb[0] = 1.f; rgb[1] = 1.f; rgb[2] = 0.f; break;
    }
}

// Pixel membership rules (pixel centers at integer coordinates):
//   square:   |x-cx| <= s and |y-cy| <= s
//   circle:   (x-cx)^2 + (y-cy)^2 <= s^2
//   triangle: rows cy-s .. cy+s, row half-width (y-(cy-s))/2 (integer division)
inline bool shape_contains(const ShapeSpec& s, int x, int y) {
    const int dx = x - s.cx, dy = y - s.cy;
    switch (s.kind) {
        case ShapeKind::square:
            return std::abs(dx) <= s.size && std::abs(dy) <= s.size;
        case ShapeKind::circle:
            return dx * dx + dy * dy <= s.size * s.size;
        case ShapeKind::triangle: {
            if (dy < -s.size || dy > s.size) return false;
            const int half_width = (dy + s.size) / 2;
            return std::abs(dx) <= half_width;
        }
    }
    return false;
}

inline TensorT<float> render(const ShapeSpec& spec, int image_size = 32) {
    if (spec.size < 3) throw std::invalid_argument("render: size must be >= 3 px");
    if (spec.cx - spec.size < 0 || spec.cx + spec.size >= image_size ||
        spec.cy - spec.size < 0 || spec.cy + spec.size >= image_size) {
        throw std::invalid_argument("render: shape extends outside the canvas");
    }
    if (spec.background < 0.f || spec.background > 1.f) {
        throw std::invalid_argument("render: background shade outside [0,1]");
    }
    TensorT<float> img({image_size, image_size, 3});
    float rgb[3];
    shape_rgb(spec.color, rgb);
    for (int y = 0; y < image_size; ++y) {
        for (int x = 0; x < image_size; ++x) {
            const bool inside = shape_contains(spec, x, y);
            for (int c = 0; c < 3; ++c) img(y, x, c) = inside ? rgb[c] : spec.background;
        }
    }
    return img;
}

// Uniform kind/color, size in [3,6], center anywhere the shape fits,
// background shade in [0, 0.25]. Reproducible per seed.
inline ShapeSpec sample_shape_spec(SeededRng& rng, int image_size = 32) {
    ShapeSpec s;
    s.kind = static_cast<ShapeKind>(rng.next_below(kNumShapeKinds));
    s.color = static_cast<ShapeColor>(rng.next_below(kNumShapeColors));
    s.size = 3 + static_cast<int>(rng.next_below(4));
    const int lo = s.size;
    const int hi = image_size - 1 - s.size;
    s.cx = lo + static_cast<int>(rng.next_below(static_cast<uint64_t>(hi - lo + 1)));
    s.cy = lo + static_cast<int>(rng.next_below(static_cast<uint64_t>(hi - lo + 1)));
    s.background = static_cast<float>(rng.uniform(0.0, 0.25));
    return s;
}

inline std::vector<LabeledImage> sample_dataset(SeededRng& rng, int n, int image_size = 32) {
    if (n < 1) throw std::invalid_argument("sample_dataset: n must be >= 1");
    std::vector<LabeledImage> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const ShapeSpec s = sample_shape_spec(rng, image_size);
        out.push_back({render(s, image_size), shape_label(s)});
    }
    return out;
}

}  // namespace freectl
