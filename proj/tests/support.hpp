#pragma once

#include <random>

#include "floqlab/linalg.hpp"
#include "floqlab/types.hpp"

namespace floqlab::test {

/// Deterministic generators for property-style tests.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    Complex complex_unit_disk() {
        while (true) {
            const double re = uniform(), im = uniform();
            if (re * re + im * im <= 1.0) return {re, im};
        }
    }

    Matrix matrix(int rows, int cols);
    Matrix hermitian(int n, double scale = 1.0);
    Matrix unitary(int n);          // exp(iH) for a random Hermitian H
    Matrix contraction(int n, double norm_bound = 0.8);
    Vector vector(int n);
    Vector unit_vector(int n);

private:
    std::mt19937_64 engine_;
};

}  // namespace floqlab::test
