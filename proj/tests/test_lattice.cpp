#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "floqlab/errors.hpp"
#include "floqlab/fft.hpp"
#include "floqlab/grid.hpp"
#include "support.hpp"

using namespace floqlab;
using namespace floqlab::grid;
using floqlab::test::Rng;

namespace {

GridBasis small_basis(int n = 128, double half_width = 12.0, double omega = 1.0) {
    GridBasis b;
    b.n_points = n;
    b.half_width = half_width;
    b.omega = omega;
    return b;
}

double interior_commutator_defect(const GridBasis& basis, double fraction, double mfraction) {
    const Matrix x = position_op(basis);
    const Matrix p = momentum_op(basis);
    const Matrix defect =
        x * p - p * x - imag_unit * Matrix::Identity(basis.n_points, basis.n_points);
    const Matrix q = interior_basis(InteriorWeight::box(basis, fraction, mfraction));
    return compressed_norm(defect, q);
}

}  // namespace

TEST_CASE("fft agrees with the dense reference transform") {
    Rng rng(1);
    for (int n : {8, 64, 256}) {
        const Matrix f = fft::dense_dft(n);
        const Vector v = rng.vector(n);
        Vector fast;
        fft::forward(v, fast);
        CHECK((fast - f * v).norm() < 1e-12 * v.norm());
        Vector back;
        fft::inverse(fast, back);
        CHECK((back - v).norm() < 1e-12 * v.norm());
        CHECK(linalg::is_unitary(f, 1e-11 * n));
    }
    CHECK_THROWS_AS(fft::plan_for(96), BadGrid);
}

TEST_CASE("grid geometry") {
    GridBasis b = small_basis(2, 1.0);
    CHECK(b.spacing() == doctest::Approx(1.0));
    const Matrix x = position_op(b);
    CHECK(std::real(x(0, 0)) == doctest::Approx(-1.0));
    CHECK(std::real(x(1, 1)) == doctest::Approx(0.0));

    GridBasis bad = small_basis(100);
    CHECK_THROWS_AS(bad.validate(), BadGrid);
}

TEST_CASE("position operator is Hermitian with norm max|x_k|") {
    const GridBasis b = small_basis(64, 5.0);
    const Matrix x = position_op(b);
    CHECK(linalg::is_hermitian(x, 1e-14));
    CHECK(linalg::op_norm(x) == doctest::Approx(5.0).epsilon(1e-9));  // |x_0| = L
}

TEST_CASE("momentum operator annihilates constants and shifts lattice harmonics") {
    const GridBasis b = small_basis(128, 7.0);
    const Matrix p = momentum_op(b);
    CHECK(linalg::is_hermitian(p, 1e-12 * p.norm()));

    const Vector ones = Vector::Constant(b.n_points, 1.0);
    CHECK((p * ones).norm() < 1e-12);

    Vector harmonic(b.n_points);
    for (int k = 0; k < b.n_points; ++k)
        harmonic[k] = std::polar(1.0, pi * b.point(k) / b.half_width);
    const Vector pv = p * harmonic;
    CHECK((pv - (pi / b.half_width) * harmonic).norm() < 1e-10 * harmonic.norm());
}

TEST_CASE("momentum eigenvalues are exactly the grid frequencies") {
    const GridBasis b = small_basis(64, 3.0);
    const Matrix p = momentum_op(b);
    auto eig = linalg::herm_eig(p);
    RealVector expected = momentum_diag(b);
    std::sort(expected.begin(), expected.end());
    for (int j = 0; j < b.n_points; ++j)
        CHECK(eig.values[j] == doctest::Approx(expected[j]).epsilon(1e-10));
}

TEST_CASE("oscillator spectrum and ground state") {
    GridBasis b = small_basis(512, 12.0, 1.0);
    const Matrix h = hamiltonian_op(b);
    auto eig = linalg::herm_eig(h);
    for (int n = 0; n < 10; ++n) CHECK(std::abs(eig.values[n] - (n + 0.5)) < 1e-6);

    Vector gauss(b.n_points);
    for (int k = 0; k < b.n_points; ++k) gauss[k] = std::exp(-0.5 * b.point(k) * b.point(k));
    gauss /= gauss.norm();
    Vector ground = eig.vectors.col(0);
    ground *= std::polar(1.0, -std::arg(gauss.dot(ground)));  // fix the global phase
    CHECK((ground - gauss).norm() < 1e-5);
}

TEST_CASE("oscillator frequency scaling") {
    GridBasis b = small_basis(512, 12.0, 2.0);
    const Matrix h = hamiltonian_op(b);
    auto eig = linalg::herm_eig(h);
    for (int n = 0; n <= 5; ++n) CHECK(std::abs(eig.values[n] - 2.0 * (n + 0.5)) < 1e-5);
}

TEST_CASE("multiplication operators form a diagonal algebra") {
    const GridBasis b = small_basis(64, 4.0);
    CHECK(multiplication_op(b, FuncSpec::zero()).norm() == 0.0);
    CHECK((multiplication_op(b, FuncSpec::constant(1.0)) - Matrix::Identity(64, 64)).norm() == 0.0);

    const FuncSpec f = FuncSpec::gaussian(1.0, 1.0);
    const Matrix mf = multiplication_op(b, f);
    CHECK(linalg::op_norm(mf) == doctest::Approx(1.0).epsilon(1e-9));  // 0 is a grid point

    const FuncSpec g = FuncSpec::sine(0.7, 2.0);
    const Matrix mg = multiplication_op(b, g);
    Matrix product_fg(64, 64);
    product_fg.setZero();
    for (int k = 0; k < 64; ++k) product_fg(k, k) = f(b.point(k)) * g(b.point(k));
    CHECK((mf * mg - product_fg).norm() == 0.0);
}

TEST_CASE("function descriptor parsing round-trips") {
    for (const char* text : {"zero", "constant(2.5)", "sin(1,2)", "cos(0.5,1)",
                             "gaussian(0.1,1)", "bump(1,3)"}) {
        const FuncSpec f = FuncSpec::parse(text);
        const FuncSpec g = FuncSpec::parse(f.str());
        for (double x : {-1.0, 0.0, 0.3, 2.0}) CHECK(f(x) == doctest::Approx(g(x)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(FuncSpec::parse("wavelet(1)"), ParseError);
    CHECK_THROWS_AS(FuncSpec::parse("gaussian(1)"), ParseError);
}

TEST_CASE("descriptor derivatives match finite differences") {
    for (const char* text : {"sin(1.2,0.7)", "cos(0.4,2.0)", "gaussian(0.8,1.3)", "bump(1,2)"}) {
        const FuncSpec f = FuncSpec::parse(text);
        for (double x : {-1.5, -0.2, 0.0, 0.9, 1.7}) {
            const double h = 1e-6;
            const double fd = (f(x + h) - f(x - h)) / (2 * h);
            CHECK(f.derivative(x) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("interior projector trivial windows") {
    const GridBasis b = small_basis(64, 4.0);
    const Matrix full = interior_projector(InteriorWeight::box(b, 1.0, 1.0));
    CHECK((full - Matrix::Identity(64, 64)).norm() < 1e-11);

    // Position mask alone on a 4-point grid.
    const GridBasis tiny = small_basis(4, 1.0);
    const InteriorWeight half = InteriorWeight::box(tiny, 0.5, 1.0);
    const Matrix p = interior_projector(half);
    for (int k = 0; k < 4; ++k) {
        const double want = std::abs(tiny.point(k)) <= 0.5 ? 1.0 : 0.0;
        CHECK(std::abs(p(k, k) - want) < 1e-11);
    }
}

TEST_CASE("interior projector is an orthogonal projection") {
    const GridBasis b = small_basis(128, 10.0);
    const Matrix p = interior_projector(InteriorWeight::box(b));
    CHECK((p * p - p).norm() < 1e-10);
    CHECK((p - p.adjoint()).norm() < 1e-12);
}

TEST_CASE("canonical commutator holds on the interior and improves with n") {
    const double coarse = interior_commutator_defect(small_basis(512, 16.0), 0.5, 0.5);
    const double fine = interior_commutator_defect(small_basis(1024, 16.0), 0.5, 0.5);
    CHECK(fine <= 1e-6);
    CHECK(fine < coarse);
}

TEST_CASE("spectral derivative of tabulated samples") {
    const GridBasis b = small_basis(256, 10.0);
    std::vector<double> samples(b.n_points);
    const FuncSpec ref = FuncSpec::gaussian(1.0, 1.5);
    for (int k = 0; k < b.n_points; ++k) samples[k] = ref(b.point(k));
    const FuncSpec tab = FuncSpec::tabulated(-10.0, b.spacing(), samples);
    const RealVector dv = derivative_samples(b, tab);
    for (int k = 0; k < b.n_points; k += 17) {
        const double x = b.point(k);
        if (std::abs(x) < 5.0) CHECK(std::abs(dv[k] - ref.derivative(x)) < 1e-8);
    }
}
