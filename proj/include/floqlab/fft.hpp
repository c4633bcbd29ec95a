#pragma once

#include <vector>

#include "floqlab/types.hpp"

namespace floqlab::fft {

/// Precomputed twiddle factors and bit-reversal table for one transform size.
/// Plans are immutable after construction and may be shared across threads.
class Plan {
public:
    explicit Plan(int n);

    int size() const { return n_; }

    /// In-place unitary DFT: y_m = (1/sqrt(n)) sum_k x_k exp(-2*pi*i*m*k/n).
    void forward(Complex* data) const;
    /// In-place unitary inverse DFT.
    void inverse(Complex* data) const;

private:
    void transform(Complex* data, bool inverse) const;

    int n_;
    int log2n_;
    std::vector<int> bitrev_;
    std::vector<Complex> twiddle_;  // exp(-2*pi*i*j/n), j = 0..n/2-1
};

/// Shared immutable plan for size n (n a power of two). Throws BadGrid otherwise.
const Plan& plan_for(int n);

void forward(VectorRef x, Vector& out);
void inverse(VectorRef x, Vector& out);

/// Apply the unitary DFT to every column of a matrix in place.
void forward_columns(Matrix& m);
void inverse_columns(Matrix& m);

/// Dense unitary DFT matrix F with F(m,k) = exp(-2*pi*i*m*k/n)/sqrt(n).
/// Reference path; the radix-2 transform must agree with it to 1e-12.
Matrix dense_dft(int n);

bool is_power_of_two(int n);

}  // namespace floqlab::fft
