#include "ewagg/transform.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace ewagg {
namespace {

// One FFTW plan per (size, kind), created under a lock and executed with
// fftw_execute_r2r on fftw_malloc'ed buffers.
class PlanCache {
public:
    fftw_plan get(Index n, fftw_r2r_kind kind) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, static_cast<int>(kind));
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        double* in = fftw_alloc_real(static_cast<size_t>(n));
        double* out = fftw_alloc_real(static_cast<size_t>(n));
        fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(n), in, out, kind, FFTW_ESTIMATE);
        fftw_free(in);
        fftw_free(out);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<Index, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

struct FftwBuffer {
    explicit FftwBuffer(Index n) : data(fftw_alloc_real(static_cast<size_t>(n))) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    double* data;
};

// Unscaled REDFT10 (DCT-II): Y_k = 2 sum_j x_j cos(pi k (2j+1) / 2n).
Vector redft(const Vector& v, fftw_r2r_kind kind) {
    const Index n = v.size();
    FftwBuffer in(n), out(n);
    for (Index i = 0; i < n; ++i) in.data[i] = v[i];
    fftw_execute_r2r(plan_cache().get(n, kind), in.data, out.data);
    Vector r(n);
    for (Index i = 0; i < n; ++i) r[i] = out.data[i];
    return r;
}

}  // namespace

Vector dct_forward(const Vector& v) {
    const Index n = v.size();
    if (n == 0) return {};
    Vector y = redft(v, FFTW_REDFT10);
    const double nd = static_cast<double>(n);
    y[0] /= 2.0 * nd;
    y.tail(n - 1) *= std::numbers::sqrt2 / (2.0 * nd);
    return y;
}

Vector dct_inverse(const Vector& theta) {
    const Index n = theta.size();
    if (n == 0) return {};
    // REDFT01: x_j = Y_0 + 2 sum_{k>=1} Y_k cos(pi k (2j+1) / 2n).
    Vector y = theta;
    y.tail(n - 1) /= std::numbers::sqrt2;
    return redft(y, FFTW_REDFT01);
}

Vector analyze(Basis basis, const Vector& v) {
    if (basis == Basis::Identity) return v;
    return dct_forward(v) * std::sqrt(static_cast<double>(v.size()));
}

Vector synthesize(Basis basis, const Vector& c) {
    if (basis == Basis::Identity) return c;
    return dct_inverse(c) / std::sqrt(static_cast<double>(c.size()));
}

Matrix basis_matrix(Basis basis, Index n) {
    if (basis == Basis::Identity) return Matrix::Identity(n, n);
    Matrix q(n, n);
    const double nd = static_cast<double>(n);
    for (Index k = 0; k < n; ++k) {
        const double scale = (k == 0 ? 1.0 : std::numbers::sqrt2) / std::sqrt(nd);
        for (Index i = 0; i < n; ++i)
            q(k, i) = scale * std::cos(std::numbers::pi * static_cast<double>(k) * (2.0 * i + 1.0) / (2.0 * nd));
    }
    return q;
}

}  // namespace ewagg
