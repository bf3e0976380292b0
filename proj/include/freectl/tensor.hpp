#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "freectl/rng.hpp"

namespace freectl {

// Dense row-major tensor. Value semantics throughout: copies are deep, and a
// tensor handed to a caller is theirs to keep. All reductions run in a fixed
// loop order so results are bit-reproducible run to run.
template <typename T>
class TensorT {
public:
    TensorT() = default;

    explicit TensorT(std::vector<int> shape) : shape_(std::move(shape)) {
        data_.assign(static_cast<size_t>(numel_of(shape_)), T(0));
    }

    TensorT(std::vector<int> shape, std::vector<T> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        if (numel_of(shape_) != static_cast<int64_t>(data_.size())) {
            throw std::invalid_argument("tensor: shape does not match data length");
        }
    }

    static TensorT zeros(std::vector<int> shape) { return TensorT(std::move(shape)); }

    static TensorT full(std::vector<int> shape, T value) {
        TensorT t(std::move(shape));
        for (auto& v : t.data_) v = value;
        return t;
    }

    static TensorT gaussian(SeededRng& rng, std::vector<int> shape) {
        TensorT t(std::move(shape));
        for (auto& v : t.data_) v = static_cast<T>(rng.next_gaussian());
        return t;
    }

    const std::vector<int>& shape() const { return shape_; }
    int dim(int i) const { return shape_[static_cast<size_t>(i)]; }
    int rank() const { return static_cast<int>(shape_.size()); }
    int64_t numel() const { return static_cast<int64_t>(data_.size()); }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    T& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
    T operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * shape_[1] + j]; }
    T operator()(int i, int j) const { return data_[static_cast<size_t>(i) * shape_[1] + j]; }

    T& operator()(int i, int j, int k) {
        return data_[(static_cast<size_t>(i) * shape_[1] + j) * shape_[2] + k];
    }
    T operator()(int i, int j, int k) const {
        return data_[(static_cast<size_t>(i) * shape_[1] + j) * shape_[2] + k];
    }

    bool same_shape(const TensorT& o) const { return shape_ == o.shape_; }

    TensorT reshaped(std::vector<int> shape) const {
        if (numel_of(shape) != numel()) {
            throw std::invalid_argument("reshape: element count mismatch");
        }
        return TensorT(std::move(shape), data_);
    }

    static int64_t numel_of(const std::vector<int>& shape) {
        int64_t n = 1;
        for (int d : shape) {
            if (d < 0) throw std::invalid_argument("tensor: negative extent");
            n *= d;
        }
        return n;
    }

private:
    std::vector<int> shape_;
    std::vector<T> data_;
};

using Tensor = TensorT<float>;

template <typename T>
std::string shape_str(const TensorT<T>& t) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < t.rank(); ++i) os << (i ? "," : "") << t.shape()[static_cast<size_t>(i)];
    os << "]";
    return os.str();
}

template <typename T>
void check_same_shape(const TensorT<T>& a, const TensorT<T>& b, const char* op) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + shape_str(a) +
                                    " vs " + shape_str(b));
    }
}

template <typename T>
bool all_finite(const TensorT<T>& t) {
    for (int64_t i = 0; i < t.numel(); ++i) {
        if (!std::isfinite(static_cast<double>(t[i]))) return false;
    }
    return true;
}

template <typename T>
void require_finite(const TensorT<T>& t, const char* what) {
    if (!all_finite(t)) throw std::runtime_error(std::string(what) + ": non-finite values");
}

// ---- elementwise ----

template <typename T>
TensorT<T> add(const TensorT<T>& a, const TensorT<T>& b) {
    check_same_shape(a, b, "add");
    TensorT<T> out = a;
    for (int64_t i = 0; i < out.numel(); ++i) out[i] += b[i];
    return out;
}

template <typename T>
TensorT<T> sub(const TensorT<T>& a, const TensorT<T>& b) {
    check_same_shape(a, b, "sub");
    TensorT<T> out = a;
    for (int64_t i = 0; i < out.numel(); ++i) out[i] -= b[i];
    return out;
}

template <typename T>
TensorT<T> scale(const TensorT<T>& a, T s) {
    TensorT<T> out = a;
    for (int64_t i = 0; i < out.numel(); ++i) out[i] *= s;
    return out;
}

// a += s * b
template <typename T>
void add_scaled(TensorT<T>& a, T s, const TensorT<T>& b) {
    check_same_shape(a, b, "add_scaled");
    for (int64_t i = 0; i < a.numel(); ++i) a[i] += s * b[i];
}

template <typename T>
T max_abs_diff(const TensorT<T>& a, const TensorT<T>& b) {
    check_same_shape(a, b, "max_abs_diff");
    T m = 0;
    for (int64_t i = 0; i < a.numel(); ++i) {
        T d = std::abs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

template <typename T>
TensorT<T> clamp(const TensorT<T>& a, T lo, T hi) {
    TensorT<T> out = a;
    for (int64_t i = 0; i < out.numel(); ++i) {
        if (out[i] < lo) out[i] = lo;
        if (out[i] > hi) out[i] = hi;
    }
    return out;
}

// ---- matrix ops ----

// C[m,n] = A[m,k] * B[k,n]. i-k-j loop: the per-element accumulation runs in
// ascending k, so results do not depend on vector width or scheduling.
template <typename T>
TensorT<T> matmul(const TensorT<T>& a, const TensorT<T>& b) {
    if (a.rank() != 2 || b.rank() != 2) throw std::invalid_argument("matmul: rank-2 tensors required");
    if (a.dim(1) != b.dim(0)) {
        throw std::invalid_argument("matmul: inner dimensions disagree " + shape_str(a) + " x " +
                                    shape_str(b));
    }
    const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
    TensorT<T> c({m, n});
    const T* pa = a.data();
    const T* pb = b.data();
    T* pc = c.data();
    for (int i = 0; i < m; ++i) {
        T* crow = pc + static_cast<size_t>(i) * n;
        for (int kk = 0; kk < k; ++kk) {
            const T av = pa[static_cast<size_t>(i) * k + kk];
            const T* brow = pb + static_cast<size_t>(kk) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

template <typename T>
TensorT<T> transpose(const TensorT<T>& a) {
    if (a.rank() != 2) throw std::invalid_argument("transpose: rank-2 tensor required");
    const int m = a.dim(0), n = a.dim(1);
    TensorT<T> t({n, m});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) t(j, i) = a(i, j);
    return t;
}

// A[m,k] * B[n,k]^T
template <typename T>
TensorT<T> matmul_nt(const TensorT<T>& a, const TensorT<T>& b) {
    return matmul(a, transpose(b));
}

// A[k,m]^T * B[k,n]
template <typename T>
TensorT<T> matmul_tn(const TensorT<T>& a, const TensorT<T>& b) {
    return matmul(transpose(a), b);
}

// Row-wise softmax over the last dimension, max-subtracted for stability.
template <typename T>
TensorT<T> softmax_rows(const TensorT<T>& x) {
    if (x.rank() < 1 || x.shape().back() < 1) {
        throw std::invalid_argument("softmax_rows: last dimension must be >= 1");
    }
    require_finite(x, "softmax_rows input");
    const int n = x.shape().back();
    const int64_t rows = x.numel() / n;
    TensorT<T> out = x;
    T* p = out.data();
    for (int64_t r = 0; r < rows; ++r) {
        T* row = p + r * n;
        T mx = row[0];
        for (int j = 1; j < n; ++j) mx = std::max(mx, row[j]);
        T sum = 0;
        for (int j = 0; j < n; ++j) {
            row[j] = std::exp(row[j] - mx);
            sum += row[j];
        }
        const T inv = T(1) / sum;
        for (int j = 0; j < n; ++j) row[j] *= inv;
    }
    return out;
}

// Per-row layer norm over the last dimension, then gain/bias.
template <typename T>
TensorT<T> layer_norm(const TensorT<T>& x, const TensorT<T>& gain, const TensorT<T>& bias,
                      T eps = T(1e-5)) {
    const int d = x.shape().back();
    if (gain.numel() != d || bias.numel() != d) {
        throw std::invalid_argument("layer_norm: gain/bias must match feature dimension");
    }
    if (eps <= T(0)) throw std::invalid_argument("layer_norm: eps must be positive");
    const int64_t rows = x.numel() / d;
    TensorT<T> out = x;
    T* p = out.data();
    for (int64_t r = 0; r < rows; ++r) {
        T* row = p + r * d;
        T mean = 0;
        for (int j = 0; j < d; ++j) mean += row[j];
        mean /= d;
        T var = 0;
        for (int j = 0; j < d; ++j) {
            const T c = row[j] - mean;
            var += c * c;
        }
        var /= d;
        const T rstd = T(1) / std::sqrt(var + eps);
        for (int j = 0; j < d; ++j) row[j] = (row[j] - mean) * rstd * gain[j] + bias[j];
    }
    return out;
}

}  // namespace freectl
