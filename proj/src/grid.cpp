#include "floqlab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "floqlab/errors.hpp"
#include "floqlab/fft.hpp"

namespace floqlab::grid {

void GridBasis::validate() const {
    if (!fft::is_power_of_two(n_points))
        throw BadGrid("basis.n_points must be a power of two, got " + std::to_string(n_points));
    if (!(half_width > 0.0)) throw BadGrid("basis.half_width must be positive");
    if (!(omega > 0.0)) throw BadGrid("basis.omega must be positive");
}

double GridBasis::momentum(int j) const {
    const int m = j < n_points / 2 ? j : j - n_points;
    return pi * m / half_width;
}

double GridBasis::momentum_max() const { return pi / spacing(); }

FuncSpec FuncSpec::constant(double a) {
    FuncSpec f;
    f.kind = Kind::Constant;
    f.a = a;
    return f;
}

FuncSpec FuncSpec::sine(double a, double b) {
    FuncSpec f;
    f.kind = Kind::Sin;
    f.a = a;
    f.b = b;
    return f;
}

FuncSpec FuncSpec::cosine(double a, double b) {
    FuncSpec f;
    f.kind = Kind::Cos;
    f.a = a;
    f.b = b;
    return f;
}

FuncSpec FuncSpec::gaussian(double a, double s) {
    FuncSpec f;
    f.kind = Kind::Gaussian;
    f.a = a;
    f.b = s;
    return f;
}

FuncSpec FuncSpec::bump(double a, double w) {
    FuncSpec f;
    f.kind = Kind::Bump;
    f.a = a;
    f.b = w;
    return f;
}

FuncSpec FuncSpec::tabulated(double x0, double dx, std::vector<double> samples) {
    FuncSpec f;
    f.kind = Kind::Tabulated;
    f.x0 = x0;
    f.dx = dx;
    f.samples = std::move(samples);
    return f;
}

double FuncSpec::operator()(double x) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return a;
        case Kind::Sin: return a * std::sin(b * x);
        case Kind::Cos: return a * std::cos(b * x);
        case Kind::Gaussian: return a * std::exp(-x * x / (b * b));
        case Kind::Bump: {
            const double w = b;
            if (std::abs(x) >= w) return 0.0;
            return a * std::exp(1.0 - w * w / (w * w - x * x));
        }
        case Kind::Tabulated: {
            if (samples.empty()) return 0.0;
            const double u = (x - x0) / dx;
            if (u <= 0.0) return samples.front();
            if (u >= double(samples.size() - 1)) return samples.back();
            const int k = int(u);
            const double frac = u - k;
            return (1.0 - frac) * samples[k] + frac * samples[k + 1];
        }
    }
    return 0.0;
}

double FuncSpec::derivative(double x) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return 0.0;
        case Kind::Sin: return a * b * std::cos(b * x);
        case Kind::Cos: return -a * b * std::sin(b * x);
        case Kind::Gaussian: return -2.0 * x / (b * b) * (*this)(x);
        case Kind::Bump: {
            const double w = b;
            if (std::abs(x) >= w) return 0.0;
            const double d = w * w - x * x;
            return (*this)(x) * (-2.0 * w * w * x / (d * d));
        }
        case Kind::Tabulated:
            throw Error("FuncSpec: tabulated descriptor has no analytic derivative");
    }
    return 0.0;
}

std::string FuncSpec::str() const {
    char buf[128];
    switch (kind) {
        case Kind::Zero: return "zero";
        case Kind::Constant: std::snprintf(buf, sizeof buf, "constant(%.17g)", a); return buf;
        case Kind::Sin: std::snprintf(buf, sizeof buf, "sin(%.17g,%.17g)", a, b); return buf;
        case Kind::Cos: std::snprintf(buf, sizeof buf, "cos(%.17g,%.17g)", a, b); return buf;
        case Kind::Gaussian: std::snprintf(buf, sizeof buf, "gaussian(%.17g,%.17g)", a, b); return buf;
        case Kind::Bump: std::snprintf(buf, sizeof buf, "bump(%.17g,%.17g)", a, b); return buf;
        case Kind::Tabulated: {
            std::ostringstream out;
            out << "tabulated(" << x0 << "," << dx;
            for (double s : samples) out << "," << s;
            out << ")";
            return out.str();
        }
    }
    return "zero";
}

namespace {

std::vector<double> parse_args(const std::string& text, size_t open, const std::string& name) {
    if (text.back() != ')') throw ParseError("function descriptor missing ')': " + text);
    std::vector<double> args;
    std::string body = text.substr(open + 1, text.size() - open - 2);
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            args.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            throw ParseError("bad numeric argument '" + item + "' in " + name);
        }
    }
    return args;
}

}  // namespace

FuncSpec FuncSpec::parse(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    if (text == "zero" || text.empty()) return FuncSpec::zero();
    const size_t open = text.find('(');
    if (open == std::string::npos) throw ParseError("unknown function descriptor: " + raw);
    const std::string name = text.substr(0, open);
    const std::vector<double> args = parse_args(text, open, name);
    auto need = [&](size_t n) {
        if (args.size() != n)
            throw ParseError("descriptor " + name + " expects " + std::to_string(n) + " arguments");
    };
    if (name == "constant") { need(1); return constant(args[0]); }
    if (name == "sin") { need(2); return sine(args[0], args[1]); }
    if (name == "cos") { need(2); return cosine(args[0], args[1]); }
    if (name == "gaussian") { need(2); return gaussian(args[0], args[1]); }
    if (name == "bump") { need(2); return bump(args[0], args[1]); }
    if (name == "tabulated") {
        if (args.size() < 3) throw ParseError("tabulated(x0,dx,samples...) needs at least one sample");
        return tabulated(args[0], args[1], std::vector<double>(args.begin() + 2, args.end()));
    }
    throw ParseError("unknown function descriptor: " + name);
}

InteriorWeight InteriorWeight::box(const GridBasis& basis, double fraction, double momentum_fraction) {
    InteriorWeight w;
    w.basis = basis;
    w.fraction = fraction;
    w.momentum_fraction = momentum_fraction;
    return w;
}

InteriorWeight InteriorWeight::rotation_safe(const GridBasis& basis, double fraction) {
    InteriorWeight w;
    w.basis = basis;
    w.fraction = fraction;
    w.momentum_fraction = fraction * basis.omega * basis.half_width / basis.momentum_max();
    return w;
}

RealVector position_diag(const GridBasis& basis) {
    RealVector x(basis.n_points);
    for (int k = 0; k < basis.n_points; ++k) x[k] = basis.point(k);
    return x;
}

RealVector momentum_diag(const GridBasis& basis) {
    RealVector p(basis.n_points);
    for (int j = 0; j < basis.n_points; ++j) p[j] = basis.momentum(j);
    return p;
}

Matrix position_op(const GridBasis& basis) {
    basis.validate();
    return position_diag(basis).cast<Complex>().asDiagonal();
}

namespace {

/// F^dag diag(g) F built by transforming identity columns with the fast path.
Matrix fourier_multiplier(const GridBasis& basis, const RealVector& g) {
    const int n = basis.n_points;
    Matrix m = Matrix::Identity(n, n);
    fft::forward_columns(m);
    for (int c = 0; c < n; ++c) m.col(c).array() *= g.array().cast<Complex>();
    fft::inverse_columns(m);
    return m;
}

}  // namespace

Matrix momentum_op(const GridBasis& basis) {
    basis.validate();
    Matrix p = fourier_multiplier(basis, momentum_diag(basis));
    return 0.5 * (p + p.adjoint().eval());  // symmetrize the last few ulps
}

Matrix hamiltonian_op(const GridBasis& basis) {
    basis.validate();
    const RealVector p = momentum_diag(basis);
    Matrix h = fourier_multiplier(basis, 0.5 * p.cwiseProduct(p));
    const RealVector x = position_diag(basis);
    const double w2 = basis.omega * basis.omega;
    for (int k = 0; k < basis.n_points; ++k) h(k, k) += 0.5 * w2 * x[k] * x[k];
    return 0.5 * (h + h.adjoint().eval());
}

Matrix multiplication_op(const GridBasis& basis, const FuncSpec& f) {
    basis.validate();
    Vector d(basis.n_points);
    for (int k = 0; k < basis.n_points; ++k) {
        const double v = f(basis.point(k));
        if (!std::isfinite(v))
            throw NonFinite("multiplication_op: descriptor not finite at x = " +
                            std::to_string(basis.point(k)));
        d[k] = v;
    }
    return d.asDiagonal();
}

RealVector derivative_samples(const GridBasis& basis, const FuncSpec& f) {
    const int n = basis.n_points;
    RealVector d(n);
    if (f.has_analytic_derivative()) {
        for (int k = 0; k < n; ++k) d[k] = f.derivative(basis.point(k));
        return d;
    }
    // Spectral derivative of the sampled values on the periodic grid.
    Vector v(n);
    for (int k = 0; k < n; ++k) v[k] = f(basis.point(k));
    Vector vhat;
    fft::forward(v, vhat);
    for (int j = 0; j < n; ++j) vhat[j] *= imag_unit * basis.momentum(j);
    Vector dv;
    fft::inverse(vhat, dv);
    d = dv.real();
    return d;
}

Matrix multiplication_dx_op(const GridBasis& basis, const FuncSpec& f) {
    return derivative_samples(basis, f).cast<Complex>().asDiagonal();
}

namespace {

struct ProjectorParts {
    RealVector x_mask;  // 0/1 in position
    RealVector p_mask;  // 0/1 in FFT index order
};

ProjectorParts masks(const InteriorWeight& w) {
    const int n = w.basis.n_points;
    ProjectorParts parts{RealVector(n), RealVector(n)};
    const double xc = w.position_cut() * (1.0 + 1e-14);
    const double pc = w.momentum_cut() * (1.0 + 1e-14);
    for (int k = 0; k < n; ++k) parts.x_mask[k] = std::abs(w.basis.point(k)) <= xc ? 1.0 : 0.0;
    for (int j = 0; j < n; ++j) parts.p_mask[j] = std::abs(w.basis.momentum(j)) <= pc ? 1.0 : 0.0;
    return parts;
}

linalg::HermEig projector_eig(const InteriorWeight& w) {
    w.basis.validate();
    const auto parts = masks(w);
    const int n = w.basis.n_points;
    // Qx Qp Qx as columns: Qp applied through the fast transform.
    Matrix m(n, n);
    m.setZero();
    for (int c = 0; c < n; ++c)
        if (parts.x_mask[c] != 0.0) m(c, c) = 1.0;
    fft::forward_columns(m);
    for (int c = 0; c < n; ++c) m.col(c).array() *= parts.p_mask.array().cast<Complex>();
    fft::inverse_columns(m);
    for (int r = 0; r < n; ++r)
        if (parts.x_mask[r] == 0.0) m.row(r).setZero();
    Matrix sym = 0.5 * (m + m.adjoint().eval());
    return linalg::herm_eig(sym, 0.0);
}

}  // namespace

Matrix interior_basis(const InteriorWeight& w) {
    const auto eig = projector_eig(w);
    const int n = int(eig.values.size());
    int kept = 0;
    for (int j = 0; j < n; ++j)
        if (eig.values[j] > w.keep_cut) ++kept;
    Matrix basis(n, kept);
    int c = 0;
    for (int j = 0; j < n; ++j)
        if (eig.values[j] > w.keep_cut) basis.col(c++) = eig.vectors.col(j);
    return basis;
}

Matrix interior_projector(const InteriorWeight& w) {
    const Matrix basis = interior_basis(w);
    return basis * basis.adjoint();
}

double compressed_norm(MatrixRef m, MatrixRef basis) {
    const Matrix compressed = basis.adjoint() * m * basis;
    return linalg::op_norm(compressed);
}

}  // namespace floqlab::grid
