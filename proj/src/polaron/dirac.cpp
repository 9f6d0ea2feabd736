#include "polaron/dirac.hpp"

#include <cmath>
#include <numbers>

namespace polaron {

namespace {

Eigen::Matrix2cd pauli(int j) {
    Eigen::Matrix2cd s;
    const Complex I(0, 1);
    switch (j) {
        case 0: s << 0, 1, 1, 0; break;
        case 1: s << 0, -I, I, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

DiracAlgebra build_standard() {
    DiracAlgebra d;
    d.beta = Mat4::Zero();
    d.beta.block<2, 2>(0, 0) = Eigen::Matrix2cd::Identity();
    d.beta.block<2, 2>(2, 2) = -Eigen::Matrix2cd::Identity();
    for (int j = 0; j < 3; ++j) {
        d.alpha[j] = Mat4::Zero();
        d.alpha[j].block<2, 2>(0, 2) = pauli(j);
        d.alpha[j].block<2, 2>(2, 0) = pauli(j);
    }
    d.gamma5 = Complex(0, -1) * d.alpha[0] * d.alpha[1] * d.alpha[2];
    for (int j = 0; j < 3; ++j) {
        int a = (j + 1) % 3, b = (j + 2) % 3;
        d.spin[j] = Complex(0, 0.5) * (d.alpha[a] * d.alpha[b]);
    }
    return d;
}

}  // namespace

const DiracAlgebra& DiracAlgebra::standard() {
    static const DiracAlgebra d = build_standard();
    return d;
}

Mat4 DiracAlgebra::spinor_rotation(const Vec3& axis, double angle) const {
    Vec3 n = axis.normalized();
    Eigen::Matrix2cd ns = n.x() * pauli(0) + n.y() * pauli(1) + n.z() * pauli(2);
    Eigen::Matrix2cd half =
        std::cos(angle / 2) * Eigen::Matrix2cd::Identity() +
        Complex(0, std::sin(angle / 2)) * ns;
    Mat4 u = Mat4::Zero();
    u.block<2, 2>(0, 0) = half;
    u.block<2, 2>(2, 2) = half;
    return u;
}

std::pair<Vec3, double> rotation_axis_angle(const Mat3& R) {
    double tr = R.trace();
    double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
    double angle = std::acos(c);
    if (angle < 1e-12) return {Vec3(0, 0, 1), 0.0};
    if (angle > std::numbers::pi - 1e-6) {
        // R ~ 2 n n^T - I; take the dominant column for stability
        Mat3 S = 0.5 * (R + Mat3::Identity());
        int j = 0;
        S.diagonal().maxCoeff(&j);
        Vec3 n = S.col(j) / std::sqrt(std::max(S(j, j), 1e-300));
        return {n.normalized(), angle};
    }
    Vec3 n(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
    return {n.normalized(), angle};
}

Mat4 DiracAlgebra::spinor_for_orthogonal(const Mat3& T) const {
    double det = T.determinant();
    require(std::abs(std::abs(det) - 1.0) < 1e-9 &&
                (T * T.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-9,
            ErrorCode::invalid_argument, "spinor intertwiner requires an orthogonal map");
    if (det < 0) {
        // T = (-1) * (-T) and beta realizes the inversion
        return beta * spinor_for_orthogonal(Mat3(-T));
    }
    auto [axis, angle] = rotation_axis_angle(T);
    return spinor_rotation(axis, angle);
}

}  // namespace polaron
