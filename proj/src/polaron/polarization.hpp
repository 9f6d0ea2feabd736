// polarization.hpp — transverse orthonormal polarization pairs on grid nodes

#pragma once

#include <string>
#include <vector>

#include "polaron/grid.hpp"
#include "polaron/types.hpp"

namespace polaron {

enum class PolarizationKind { xy, axis, custom };

struct PolarizationField {
    PolarizationKind kind = PolarizationKind::xy;
    Vec3 axis = Vec3(0, 0, 1);                   // meaningful for kind == axis
    std::vector<std::array<Vec3, 2>> vectors;    // e^(1), e^(2) per k-point

    std::size_t kpoint_count() const { return vectors.size(); }
    const Vec3& e(std::size_t kp, int lambda) const { return vectors[kp][lambda - 1]; }

    // worst |k.e|, |e.e - delta| over all nodes
    double transversality_residual(const ModeGrid& grid) const;
    double orthonormality_residual() const;
    // true at nodes where (e1, e2, khat) is right-handed
    bool right_handed(const ModeGrid& grid, std::size_t kp) const;
};

// kind xy: e1 = (k2, -k1, 0)/sqrt(k1^2+k2^2); kind axis(j): e1 = k^j/|k^j|;
// both with e2 = khat x e1.  Throws singular_node naming the offending node.
PolarizationField make_polarization(PolarizationKind kind, const ModeGrid& grid,
                                    const Vec3& axis = Vec3(0, 0, 1));

// transported field e'(k) = T^{-1} e(T k); used by the momentum-symmetry checks
PolarizationField transported_polarization(const PolarizationField& e,
                                           const ModeGrid& grid, const Mat3& T);

std::string polarization_kind_name(PolarizationKind k);

}  // namespace polaron
