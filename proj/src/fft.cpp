#include "floqlab/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "floqlab/errors.hpp"

namespace floqlab::fft {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Plan::Plan(int n) : n_(n) {
    if (!is_power_of_two(n)) throw BadGrid("fft: size " + std::to_string(n) + " is not a power of two");
    log2n_ = 0;
    while ((1 << log2n_) < n) ++log2n_;
    bitrev_.resize(n);
    for (int i = 0; i < n; ++i) {
        int r = 0;
        for (int b = 0; b < log2n_; ++b)
            if (i & (1 << b)) r |= 1 << (log2n_ - 1 - b);
        bitrev_[i] = r;
    }
    twiddle_.resize(n / 2);
    for (int j = 0; j < n / 2; ++j) {
        const double angle = -2.0 * pi * j / n;
        twiddle_[j] = Complex(std::cos(angle), std::sin(angle));
    }
}

void Plan::transform(Complex* data, bool inverse) const {
    for (int i = 0; i < n_; ++i) {
        const int j = bitrev_[i];
        if (j > i) std::swap(data[i], data[j]);
    }
    for (int len = 2; len <= n_; len <<= 1) {
        const int half = len / 2;
        const int stride = n_ / len;
        for (int start = 0; start < n_; start += len) {
            for (int k = 0; k < half; ++k) {
                Complex w = twiddle_[k * stride];
                if (inverse) w = std::conj(w);
                const Complex a = data[start + k];
                const Complex b = data[start + k + half] * w;
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(double(n_));
    for (int i = 0; i < n_; ++i) data[i] *= scale;
}

void Plan::forward(Complex* data) const { transform(data, false); }
void Plan::inverse(Complex* data) const { transform(data, true); }

const Plan& plan_for(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<Plan>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Plan>(n)).first;
    return *it->second;
}

void forward(VectorRef x, Vector& out) {
    out = x;
    plan_for(int(x.size())).forward(out.data());
}

void inverse(VectorRef x, Vector& out) {
    out = x;
    plan_for(int(x.size())).inverse(out.data());
}

void forward_columns(Matrix& m) {
    const Plan& plan = plan_for(int(m.rows()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) plan.forward(m.col(c).data());
}

void inverse_columns(Matrix& m) {
    const Plan& plan = plan_for(int(m.rows()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) plan.inverse(m.col(c).data());
}

Matrix dense_dft(int n) {
    Matrix f(n, n);
    const double scale = 1.0 / std::sqrt(double(n));
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            // Reduce m*k mod n first so the angle stays small.
            const long long mk = (long long)m * k % n;
            const double angle = -2.0 * pi * double(mk) / n;
            f(m, k) = scale * Complex(std::cos(angle), std::sin(angle));
        }
    }
    return f;
}

}  // namespace floqlab::fft
