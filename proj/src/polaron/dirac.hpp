// dirac.hpp — the 4x4 Dirac matrices in the standard representation, the
// chirality matrix, the spin matrices, and spinor intertwiners u_T realizing
// orthogonal maps on the alpha triple while fixing beta

#pragma once

#include <array>

#include <Eigen/Dense>

#include "polaron/types.hpp"

namespace polaron {

using Mat4 = Eigen::Matrix4cd;

struct DiracAlgebra {
    std::array<Mat4, 3> alpha;
    Mat4 beta;
    Mat4 gamma5;               // -i a1 a2 a3; commutes with alpha, anticommutes with beta
    std::array<Mat4, 3> spin;  // S = (i/4) alpha x alpha; S3 eigenvalues +-1/2

    static const DiracAlgebra& standard();

    Mat4 alpha_dot(const Vec3& v) const {
        return v.x() * alpha[0] + v.y() * alpha[1] + v.z() * alpha[2];
    }

    // u with u alpha_j u^dagger = sum_l R_{j l} alpha_l for the rotation
    // R(axis, angle), and u beta u^dagger = beta
    Mat4 spinor_rotation(const Vec3& axis, double angle) const;

    // same intertwining for any T in O(3); reflections go through beta times
    // the rotation -T
    Mat4 spinor_for_orthogonal(const Mat3& T) const;
};

// axis-angle decomposition of a proper rotation (unit axis, angle in [0, pi])
std::pair<Vec3, double> rotation_axis_angle(const Mat3& R);

}  // namespace polaron
