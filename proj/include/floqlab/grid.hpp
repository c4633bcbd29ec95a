#pragma once

#include <string>
#include <vector>

#include "floqlab/linalg.hpp"
#include "floqlab/types.hpp"

namespace floqlab::grid {

/// Uniform periodic position grid on [-L, L) with 2L/n spacing and the
/// oscillator frequency omega attached; the ambient space of every operator.
struct GridBasis {
    int n_points = 512;
    double half_width = 12.0;
    double omega = 1.0;

    double spacing() const { return 2.0 * half_width / n_points; }
    double point(int k) const { return -half_width + k * spacing(); }
    /// Signed grid frequency in FFT index order: j -> pi/L * (j < n/2 ? j : j - n).
    double momentum(int j) const;
    /// Largest representable |p| = pi / spacing.
    double momentum_max() const;

    void validate() const;  // throws BadGrid
};

/// Closed vocabulary of real-valued function descriptors used for V(x) and E(t).
///   zero | constant(a) | sin(a,b) = a*sin(b*x) | cos(a,b) = a*cos(b*x) |
///   gaussian(a,s) = a*exp(-x^2/s^2) | bump(a,w) = a*e*exp(-w^2/(w^2-x^2)) on |x|<w |
///   tabulated(x0,dx,[samples]) with linear interpolation, clamped outside.
struct FuncSpec {
    enum class Kind { Zero, Constant, Sin, Cos, Gaussian, Bump, Tabulated };

    Kind kind = Kind::Zero;
    double a = 0.0;
    double b = 0.0;
    std::vector<double> samples;
    double x0 = 0.0;
    double dx = 0.0;

    static FuncSpec zero() { return {}; }
    static FuncSpec constant(double a);
    static FuncSpec sine(double a, double b);
    static FuncSpec cosine(double a, double b);
    static FuncSpec gaussian(double a, double s);
    static FuncSpec bump(double a, double w);
    static FuncSpec tabulated(double x0, double dx, std::vector<double> samples);

    double operator()(double x) const;
    bool is_zero() const { return kind == Kind::Zero; }
    bool has_analytic_derivative() const { return kind != Kind::Tabulated; }
    double derivative(double x) const;  // throws Error for tabulated

    std::string str() const;
    static FuncSpec parse(const std::string& text);  // throws ParseError
};

/// Retention cut for the spectral rounding of the interior projector.
/// Eigenvectors of Qx^(1/2) Qp Qx^(1/2) this close to 1 carry negligible
/// weight at the grid seams, which is what the canonical-commutator residual
/// check requires.
inline constexpr double projector_keep_threshold = 1.0 - 1e-6;

/// Position-window + momentum-window filter that suppresses truncation
/// artifacts of the unbounded observables. momentum_fraction is a fraction of
/// the grid momentum ceiling pi/spacing.
struct InteriorWeight {
    GridBasis basis;
    double fraction = 0.5;
    double momentum_fraction = 0.5;
    double keep_cut = projector_keep_threshold;

    static InteriorWeight box(const GridBasis& basis, double fraction = 0.5,
                              double momentum_fraction = 0.5);
    /// Window whose phase-space square |x| <= f*L, |p| <= f*omega*L is carried
    /// into itself by the harmonic rotation, so dynamical residual checks see
    /// only faithful modes. Equivalent to momentum_fraction = f*omega*L/p_max.
    static InteriorWeight rotation_safe(const GridBasis& basis, double fraction = 0.5);

    InteriorWeight with_keep_cut(double cut) const {
        InteriorWeight w = *this;
        w.keep_cut = cut;
        return w;
    }

    double position_cut() const { return fraction * basis.half_width; }
    double momentum_cut() const { return momentum_fraction * basis.momentum_max(); }
};

RealVector position_diag(const GridBasis& basis);
RealVector momentum_diag(const GridBasis& basis);  // FFT index order

Matrix position_op(const GridBasis& basis);
Matrix momentum_op(const GridBasis& basis);
Matrix hamiltonian_op(const GridBasis& basis);
Matrix multiplication_op(const GridBasis& basis, const FuncSpec& f);

/// diag(f'(x_k)): analytic derivative when available, otherwise the spectral
/// derivative of the tabulated samples.
Matrix multiplication_dx_op(const GridBasis& basis, const FuncSpec& f);
RealVector derivative_samples(const GridBasis& basis, const FuncSpec& f);

/// Orthogonal projector Qx^(1/2) Qp Qx^(1/2) spectrally rounded to {0,1}
/// (eigenvalues above w.keep_cut map to 1). Dense n x n.
Matrix interior_projector(const InteriorWeight& w);
/// Orthonormal basis of the projector range (n x r), for compressions.
Matrix interior_basis(const InteriorWeight& w);

/// || B^dag M B || for an orthonormal-column basis B: the norm of the
/// compression of M to the subspace spanned by B.
double compressed_norm(MatrixRef m, MatrixRef basis);

}  // namespace floqlab::grid
