#include "polaron/polarization.hpp"

#include <cmath>
#include <sstream>

namespace polaron {

double PolarizationField::transversality_residual(const ModeGrid& grid) const {
    double r = 0;
    for (std::size_t kp = 0; kp < kpoint_count(); ++kp) {
        Vec3 khat = grid.kpoint(kp).normalized();
        r = std::max(r, std::abs(khat.dot(vectors[kp][0])));
        r = std::max(r, std::abs(khat.dot(vectors[kp][1])));
    }
    return r;
}

double PolarizationField::orthonormality_residual() const {
    double r = 0;
    for (const auto& pair : vectors) {
        r = std::max(r, std::abs(pair[0].norm() - 1.0));
        r = std::max(r, std::abs(pair[1].norm() - 1.0));
        r = std::max(r, std::abs(pair[0].dot(pair[1])));
    }
    return r;
}

bool PolarizationField::right_handed(const ModeGrid& grid, std::size_t kp) const {
    Vec3 khat = grid.kpoint(kp).normalized();
    return khat.cross(vectors[kp][0]).dot(vectors[kp][1]) > 0;
}

PolarizationField make_polarization(PolarizationKind kind, const ModeGrid& grid,
                                    const Vec3& axis) {
    PolarizationField field;
    field.kind = kind;
    field.axis = axis.normalized();
    field.vectors.resize(grid.kpoint_count());
    require(kind != PolarizationKind::custom, ErrorCode::invalid_argument,
            "custom polarization fields are built directly");
    for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
        const Vec3& k = grid.kpoint(kp);
        Vec3 e1;
        if (kind == PolarizationKind::xy) {
            double s = std::hypot(k.x(), k.y());
            if (s < 1e-12 * k.norm()) {
                std::ostringstream os;
                os << "xy polarization singular at node (" << k.x() << ", " << k.y()
                   << ", " << k.z() << ")";
                fail(ErrorCode::singular_node, os.str());
            }
            e1 = Vec3(k.y(), -k.x(), 0) / s;
        } else {
            Vec3 kj = k.cross(field.axis);
            if (kj.norm() < 1e-12 * k.norm()) {
                std::ostringstream os;
                os << "axis polarization singular at node parallel to axis: (" << k.x()
                   << ", " << k.y() << ", " << k.z() << ")";
                fail(ErrorCode::singular_node, os.str());
            }
            e1 = kj.normalized();
        }
        Vec3 e2 = k.normalized().cross(e1);
        field.vectors[kp] = {e1, e2};
    }
    return field;
}

PolarizationField transported_polarization(const PolarizationField& e,
                                           const ModeGrid& grid, const Mat3& T) {
    auto perm = grid.kpoint_permutation(T);  // perm[kp] = index of T k_kp
    PolarizationField out;
    out.kind = PolarizationKind::custom;
    out.axis = e.axis;
    out.vectors.resize(grid.kpoint_count());
    Mat3 Tinv = T.transpose();
    for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
        std::size_t at_tk = perm[kp];
        out.vectors[kp] = {Tinv * e.vectors[at_tk][0], Tinv * e.vectors[at_tk][1]};
    }
    return out;
}

std::string polarization_kind_name(PolarizationKind k) {
    switch (k) {
        case PolarizationKind::xy: return "xy";
        case PolarizationKind::axis: return "axis";
        case PolarizationKind::custom: return "custom";
    }
    return "?";
}

}  // namespace polaron
