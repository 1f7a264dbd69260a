// Copyright 2026 The triqwit Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/** @file
 * Fixed-dimension complex linear algebra for one-, two- and three-qubit
 * states: validated state types, Kronecker products, partial trace and
 * partial transpose, expectation values and Hermitian eigenvalues.
 *
 * Basis convention: |ijk> maps to index 4i + 2j + k, so qubit 1 is the most
 * significant bit. |0> is the +1 eigenvector of sigma_z.
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace triqwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat8 = Eigen::Matrix<Complex, 8, 8>;
using Vec8 = Eigen::Matrix<Complex, 8, 1>;

inline constexpr std::size_t kQubits = 3;
inline constexpr std::size_t kDim = 8;

/// Thrown when a value violates the invariants of the type being built.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when operand dimensions do not fit together.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Numerical acceptance thresholds shared by every validated type.
 *
 * `renormalize` is the largest norm drift a pure state may carry and still be
 * silently rescaled; anything beyond `norm` but within `renormalize` is fixed
 * up, anything beyond `renormalize` is rejected.
 */
struct Tolerances {
    double hermitian = 1e-12;
    double norm = 1e-12;
    double trace = 1e-12;
    double psd = 1e-10;
    double renormalize = 1e-9;
};

inline constexpr Tolerances kDefaultTolerances{};

namespace detail {

inline bool all_finite(const Matrix &m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (!std::isfinite(m(r, c).real()) ||
                !std::isfinite(m(r, c).imag())) {
                return false;
            }
        }
    }
    return true;
}

inline double hermitian_defect(const Matrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline std::size_t qubit_count(Eigen::Index dim) {
    switch (dim) {
    case 2:
        return 1;
    case 4:
        return 2;
    case 8:
        return 3;
    default:
        throw DimensionError("operator dimension " + std::to_string(dim) +
                             " is not 2, 4 or 8");
    }
}

/// Bit mask selecting `party` (1-based, 1 = most significant) among `n`
/// qubits.
inline std::size_t party_mask(std::size_t party, std::size_t n) {
    if (party < 1 || party > n) {
        throw std::out_of_range("party index " + std::to_string(party) +
                                " outside 1.." + std::to_string(n));
    }
    return std::size_t{1} << (n - party);
}

inline std::vector<double> hermitian_eigenvalues(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("Hermitian eigen-solver did not converge");
    }
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

} // namespace detail

/// A d x d Hermitian matrix with d in {2, 4, 8}.
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix m,
                               const Tolerances &tol = kDefaultTolerances)
        : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) {
            throw DimensionError("operator must be square");
        }
        detail::qubit_count(m_.rows());
        if (!detail::all_finite(m_)) {
            throw ValidationError("operator has non-finite entries");
        }
        if (detail::hermitian_defect(m_) > tol.hermitian) {
            throw ValidationError("operator is not Hermitian");
        }
    }

    static HermitianOperator identity(Eigen::Index dim) {
        return HermitianOperator(Matrix::Identity(dim, dim));
    }

    [[nodiscard]] const Matrix &matrix() const { return m_; }
    [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }
    [[nodiscard]] std::size_t qubits() const {
        return detail::qubit_count(m_.rows());
    }
    [[nodiscard]] Complex operator()(Eigen::Index r, Eigen::Index c) const {
        return m_(r, c);
    }

  private:
    Matrix m_;
};

/// Three-qubit pure state with unit-norm amplitudes a_{ijk}.
class PureState {
  public:
    explicit PureState(const Vec8 &amplitudes,
                       const Tolerances &tol = kDefaultTolerances)
        : a_(amplitudes) {
        for (Eigen::Index i = 0; i < 8; ++i) {
            if (!std::isfinite(a_(i).real()) || !std::isfinite(a_(i).imag())) {
                throw ValidationError("pure state has non-finite amplitude");
            }
        }
        const double n2 = a_.squaredNorm();
        const double drift = std::abs(n2 - 1.0);
        if (drift > tol.renormalize) {
            throw ValidationError("pure state norm^2 " + std::to_string(n2) +
                                  " is not 1");
        }
        if (drift > tol.norm) {
            a_ /= std::sqrt(n2);
        }
    }

    PureState(std::initializer_list<Complex> amplitudes)
        : PureState(from_list(amplitudes)) {}

    /// Computational basis state |ijk>.
    static PureState basis(int i, int j, int k) {
        Vec8 v = Vec8::Zero();
        v(4 * i + 2 * j + k) = 1.0;
        return PureState(v);
    }

    /// Product |a> (x) |b> (x) |c> of single-qubit kets (normalized inside).
    static PureState product(const Eigen::Vector2cd &a,
                             const Eigen::Vector2cd &b,
                             const Eigen::Vector2cd &c) {
        Vec8 v;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    v(4 * i + 2 * j + k) = a(i) * b(j) * c(k);
                }
            }
        }
        return PureState(v / v.norm());
    }

    [[nodiscard]] const Vec8 &amplitudes() const { return a_; }
    [[nodiscard]] Complex amplitude(int i, int j, int k) const {
        return a_(4 * i + 2 * j + k);
    }

  private:
    static Vec8 from_list(std::initializer_list<Complex> amplitudes) {
        if (amplitudes.size() != 8) {
            throw DimensionError("pure state needs 8 amplitudes");
        }
        Vec8 v;
        Eigen::Index i = 0;
        for (const auto &z : amplitudes) {
            v(i++) = z;
        }
        return v;
    }

    Vec8 a_;
};

/// Three-qubit density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
  public:
    explicit DensityMatrix(const Mat8 &rho,
                           const Tolerances &tol = kDefaultTolerances)
        : rho_(rho) {
        if (!detail::all_finite(rho_)) {
            throw ValidationError("density matrix has non-finite entries");
        }
        if (detail::hermitian_defect(rho_) > tol.hermitian) {
            throw ValidationError("density matrix is not Hermitian");
        }
        const Complex tr = rho_.trace();
        if (std::abs(tr - Complex{1.0, 0.0}) > tol.trace) {
            throw ValidationError("density matrix trace is not 1");
        }
        const auto ev = detail::hermitian_eigenvalues(rho_);
        if (ev.front() < -tol.psd) {
            throw ValidationError("density matrix has eigenvalue " +
                                  std::to_string(ev.front()) + " < 0");
        }
    }

    static DensityMatrix maximally_mixed() {
        return DensityMatrix(Mat8::Identity() / 8.0);
    }

    [[nodiscard]] const Mat8 &matrix() const { return rho_; }
    [[nodiscard]] Complex operator()(Eigen::Index r, Eigen::Index c) const {
        return rho_(r, c);
    }
    [[nodiscard]] HermitianOperator as_operator() const {
        return HermitianOperator(Matrix(rho_));
    }

  private:
    Mat8 rho_;
};

/// Convex decomposition sum_k p_k |psi_k><psi_k|.
class Ensemble {
  public:
    struct Term {
        double weight;
        PureState state;
    };

    explicit Ensemble(std::vector<Term> terms,
                      const Tolerances &tol = kDefaultTolerances)
        : terms_(std::move(terms)) {
        if (terms_.empty()) {
            throw ValidationError("ensemble is empty");
        }
        double total = 0.0;
        for (const auto &t : terms_) {
            if (!(t.weight >= 0.0) || t.weight > 1.0) {
                throw ValidationError("ensemble weight outside [0, 1]");
            }
            total += t.weight;
        }
        if (std::abs(total - 1.0) > tol.norm) {
            throw ValidationError("ensemble weights sum to " +
                                  std::to_string(total));
        }
    }

    [[nodiscard]] const std::vector<Term> &terms() const { return terms_; }

  private:
    std::vector<Term> terms_;
};

/// Kronecker product in party order; the first factor is the most
/// significant qubit.
inline HermitianOperator tensor(std::span<const HermitianOperator> ops) {
    if (ops.empty()) {
        throw DimensionError("tensor of an empty operator list");
    }
    Eigen::Index total = 1;
    for (const auto &op : ops) {
        total *= op.dim();
        if (total > 8) {
            throw DimensionError("tensor product exceeds three qubits");
        }
    }
    Matrix acc = ops.front().matrix();
    for (std::size_t f = 1; f < ops.size(); ++f) {
        const Matrix &b = ops[f].matrix();
        Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
        for (Eigen::Index i = 0; i < acc.rows(); ++i) {
            for (Eigen::Index j = 0; j < acc.cols(); ++j) {
                next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                    acc(i, j) * b;
            }
        }
        acc = std::move(next);
    }
    return HermitianOperator(std::move(acc));
}

inline HermitianOperator tensor(std::initializer_list<HermitianOperator> ops) {
    return tensor(std::span<const HermitianOperator>(ops.begin(), ops.size()));
}

inline DensityMatrix outer(const PureState &psi) {
    const Vec8 &a = psi.amplitudes();
    return DensityMatrix(a * a.adjoint());
}

inline DensityMatrix mix(const Ensemble &e) {
    Mat8 rho = Mat8::Zero();
    for (const auto &t : e.terms()) {
        const Vec8 &a = t.state.amplitudes();
        rho += t.weight * (a * a.adjoint());
    }
    return DensityMatrix(rho);
}

/// tr(rho * op) for an 8 x 8 Hermitian op.
inline double expectation(const DensityMatrix &rho,
                          const HermitianOperator &op) {
    if (op.dim() != 8) {
        throw DimensionError("expectation needs an 8x8 operator");
    }
    // tr(rho op) = sum_ij rho_ij op_ji
    const Complex value = (rho.matrix().cwiseProduct(op.matrix().transpose())).sum();
    const double scale = 1.0 + op.matrix().cwiseAbs().maxCoeff();
    if (std::abs(value.imag()) > 1e-12 * scale) {
        throw std::logic_error("expectation of Hermitian operator has "
                               "imaginary residue");
    }
    return value.real();
}

/// Reduced state of the two parties left after tracing out `traced_party`.
inline HermitianOperator partial_trace(const DensityMatrix &rho,
                                       std::size_t traced_party) {
    const std::size_t mask = detail::party_mask(traced_party, kQubits);
    // Bits below the traced one stay in place, bits above shift down by one.
    const std::size_t low = mask - 1;
    auto widen = [&](std::size_t r, std::size_t bit) {
        return ((r & ~low) << 1) | (bit ? mask : 0) | (r & low);
    };
    Matrix out = Matrix::Zero(4, 4);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            for (std::size_t t = 0; t < 2; ++t) {
                out(r, c) += rho(widen(r, t), widen(c, t));
            }
        }
    }
    return HermitianOperator(std::move(out));
}

/// Transpose on the tensor factor `party` (1-based) of a 4 x 4 or 8 x 8
/// operator.
inline HermitianOperator partial_transpose(const HermitianOperator &op,
                                           std::size_t party) {
    const std::size_t n = op.qubits();
    if (n < 2) {
        throw DimensionError("partial transpose needs at least two qubits");
    }
    const std::size_t mask = detail::party_mask(party, n);
    const Eigen::Index d = op.dim();
    Matrix out(d, d);
    for (std::size_t r = 0; r < static_cast<std::size_t>(d); ++r) {
        for (std::size_t c = 0; c < static_cast<std::size_t>(d); ++c) {
            const std::size_t r2 = (r & ~mask) | (c & mask);
            const std::size_t c2 = (c & ~mask) | (r & mask);
            out(r, c) = op(r2, c2);
        }
    }
    return HermitianOperator(std::move(out));
}

inline HermitianOperator partial_transpose(const DensityMatrix &rho,
                                           std::size_t party) {
    return partial_transpose(rho.as_operator(), party);
}

inline std::vector<double> eigenvalues(const HermitianOperator &op) {
    return detail::hermitian_eigenvalues(op.matrix());
}

inline double min_eigenvalue(const HermitianOperator &op) {
    return eigenvalues(op).front();
}

/// Checks Hermiticity first; for matrices that did not come through
/// HermitianOperator.
inline double min_eigenvalue(const Matrix &m,
                             const Tolerances &tol = kDefaultTolerances) {
    return min_eigenvalue(HermitianOperator(m, tol));
}

struct PptReport {
    std::array<double, 3> min_eigenvalues{};
    std::array<bool, 3> positive{};
    bool all = false;
};

/// Peres test on every single-qubit cut: party i passes when the smallest
/// eigenvalue of the partial transpose on i is >= -tol.
inline PptReport is_ppt(const DensityMatrix &rho, double tol = 1e-10) {
    PptReport report;
    report.all = true;
    for (std::size_t p = 1; p <= 3; ++p) {
        const double lo = min_eigenvalue(partial_transpose(rho, p));
        report.min_eigenvalues[p - 1] = lo;
        report.positive[p - 1] = lo >= -tol;
        report.all = report.all && report.positive[p - 1];
    }
    return report;
}

inline double purity(const HermitianOperator &op) {
    return (op.matrix() * op.matrix()).trace().real();
}

inline double purity(const DensityMatrix &rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

} // namespace triqwit
