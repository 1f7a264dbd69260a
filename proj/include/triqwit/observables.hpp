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
 * Single-qubit observables v.sigma, complete sets of complementary
 * observables (orthonormal Bloch triples) and their orientation.
 *
 * Triples are stored as Bloch vectors; the 2 x 2 matrices are derived on
 * demand.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

#include "core.hpp"

namespace triqwit {

/// sigma_x, sigma_y, sigma_z (index 0..2) and the identity.
inline const std::array<Mat2, 3> &pauli_matrices() {
    static const std::array<Mat2, 3> paulis = [] {
        const Complex i{0.0, 1.0};
        Mat2 x, y, z;
        x << 0.0, 1.0, 1.0, 0.0;
        y << 0.0, -i, i, 0.0;
        z << 1.0, 0.0, 0.0, -1.0;
        return std::array<Mat2, 3>{x, y, z};
    }();
    return paulis;
}

/// Thrown when a witness setting mixes triples of opposite orientation.
class MixedOrientationError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class BlochVector {
  public:
    BlochVector(double x, double y, double z)
        : BlochVector(Eigen::Vector3d(x, y, z)) {}

    explicit BlochVector(const Eigen::Vector3d &v) : v_(v) {
        if (!v_.allFinite() || std::abs(v_.norm() - 1.0) > 1e-10) {
            throw ValidationError("Bloch vector must have unit norm");
        }
    }

    [[nodiscard]] const Eigen::Vector3d &vector() const { return v_; }
    [[nodiscard]] double operator[](std::size_t i) const {
        return v_(static_cast<Eigen::Index>(i));
    }

  private:
    Eigen::Vector3d v_;
};

inline Mat2 observable_matrix(const BlochVector &v) {
    const auto &s = pauli_matrices();
    return v[0] * s[0] + v[1] * s[1] + v[2] * s[2];
}

inline HermitianOperator observable_from_bloch(const BlochVector &v) {
    return HermitianOperator(Matrix(observable_matrix(v)));
}

/// Extracts v with U = v.sigma for a traceless 2 x 2 Hermitian U.
inline Eigen::Vector3d bloch_components(const Mat2 &m) {
    const auto &s = pauli_matrices();
    Eigen::Vector3d v;
    for (int a = 0; a < 3; ++a) {
        v(a) = 0.5 * (m * s[a]).trace().real();
    }
    return v;
}

/**
 * Scalar mu with -i A1 A2 A3 = mu I.
 *
 * Fails with ValidationError when the product is not +-I, which means the
 * three observables are not mutually complementary.
 */
inline int orientation_from_product(const Mat2 &a1, const Mat2 &a2,
                                    const Mat2 &a3) {
    const Mat2 prod = Complex{0.0, -1.0} * a1 * a2 * a3;
    for (const int mu : {1, -1}) {
        if ((prod - static_cast<double>(mu) * Mat2::Identity())
                .cwiseAbs()
                .maxCoeff() <= 1e-10) {
            return mu;
        }
    }
    throw ValidationError("-iA1A2A3 is not proportional to the identity");
}

class SingleQubitUnitary {
  public:
    explicit SingleQubitUnitary(const Mat2 &u) : u_(u) {
        if (!u_.allFinite() ||
            (u_ * u_.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff() >
                1e-10) {
            throw ValidationError("matrix is not unitary");
        }
    }

    [[nodiscard]] const Mat2 &matrix() const { return u_; }

  private:
    Mat2 u_;
};

/// Complete set of three complementary observables {v_i . sigma}.
class ObservableTriple {
  public:
    ObservableTriple(const BlochVector &a1, const BlochVector &a2,
                     const BlochVector &a3)
        : v_{a1, a2, a3} {
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                if (std::abs(v_[i].vector().dot(v_[j].vector())) > 1e-10) {
                    throw ValidationError("triple vectors are not orthogonal");
                }
            }
        }
        const double det = vector_matrix().determinant();
        orientation_ = det > 0.0 ? 1 : -1;
        const int mu = orientation_from_product(
            observable(0), observable(1), observable(2));
        if (mu != orientation_) {
            throw std::logic_error("orientation by product and by "
                                   "determinant disagree");
        }
    }

    [[nodiscard]] const BlochVector &vector(std::size_t i) const {
        return v_.at(i);
    }
    /// Rows are the Bloch vectors.
    [[nodiscard]] Eigen::Matrix3d vector_matrix() const {
        Eigen::Matrix3d m;
        for (int i = 0; i < 3; ++i) {
            m.row(i) = v_[static_cast<std::size_t>(i)].vector().transpose();
        }
        return m;
    }
    [[nodiscard]] Mat2 observable(std::size_t i) const {
        return observable_matrix(v_.at(i));
    }
    [[nodiscard]] int orientation() const { return orientation_; }

  private:
    std::array<BlochVector, 3> v_;
    int orientation_ = 1;
};

inline int orientation(const ObservableTriple &t) {
    return orientation_from_product(t.observable(0), t.observable(1),
                                    t.observable(2));
}

inline ObservableTriple pauli_triple() {
    return {BlochVector(1, 0, 0), BlochVector(0, 1, 0), BlochVector(0, 0, 1)};
}

inline ObservableTriple triple_from_rotation(const Eigen::Matrix3d &r) {
    if (!r.allFinite() ||
        (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() >
            1e-10) {
        throw ValidationError("rotation matrix is not orthogonal");
    }
    return {BlochVector(Eigen::Vector3d(r.row(0).transpose())),
            BlochVector(Eigen::Vector3d(r.row(1).transpose())),
            BlochVector(Eigen::Vector3d(r.row(2).transpose()))};
}

/// Triple {U sigma_i U^dagger}; conjugation preserves orientation +1.
inline ObservableTriple triple_from_unitary(const SingleQubitUnitary &u) {
    const auto &s = pauli_matrices();
    const Mat2 &m = u.matrix();
    std::array<Eigen::Vector3d, 3> v;
    for (std::size_t i = 0; i < 3; ++i) {
        v[i] = bloch_components(m * s[i] * m.adjoint());
    }
    return {BlochVector(v[0]), BlochVector(v[1]), BlochVector(v[2])};
}

/**
 * Z-Y-Z Euler angles to the matrix whose rows are the images of the
 * coordinate axes under Rz(alpha) Ry(beta) Rz(gamma).
 */
inline Eigen::Matrix3d euler_zyz(double alpha, double beta, double gamma) {
    using Eigen::AngleAxisd;
    using Eigen::Vector3d;
    const Eigen::Matrix3d active =
        (AngleAxisd(alpha, Vector3d::UnitZ()) *
         AngleAxisd(beta, Vector3d::UnitY()) *
         AngleAxisd(gamma, Vector3d::UnitZ()))
            .toRotationMatrix();
    return active.transpose();
}

inline ObservableTriple triple_from_euler(double alpha, double beta,
                                          double gamma) {
    return triple_from_rotation(euler_zyz(alpha, beta, gamma));
}

/// Applies the rotation `s` to every Bloch vector of the triple.
inline ObservableTriple rotate(const ObservableTriple &t,
                               const Eigen::Matrix3d &s) {
    return triple_from_rotation(t.vector_matrix() * s.transpose());
}

/// One complementary triple per party; all three share one orientation.
class WitnessSetting {
  public:
    WitnessSetting(ObservableTriple a, ObservableTriple b, ObservableTriple c)
        : t_{std::move(a), std::move(b), std::move(c)} {
        if (t_[0].orientation() != t_[1].orientation() ||
            t_[0].orientation() != t_[2].orientation()) {
            throw MixedOrientationError(
                "witness setting mixes triples of opposite orientation");
        }
    }

    static WitnessSetting pauli() {
        return {pauli_triple(), pauli_triple(), pauli_triple()};
    }

    /// Triple of party 0 (A), 1 (B) or 2 (C).
    [[nodiscard]] const ObservableTriple &party(std::size_t p) const {
        return t_.at(p);
    }
    [[nodiscard]] int orientation() const { return t_[0].orientation(); }

  private:
    std::array<ObservableTriple, 3> t_;
};

} // namespace triqwit
