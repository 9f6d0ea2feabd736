// grid.hpp — finite photon-momentum grids with quadrature weights and
// an exactly represented point symmetry group

#pragma once

#include <cstddef>
#include <vector>

#include "polaron/types.hpp"

namespace polaron {

struct Mode {
    Vec3 k;          // momentum of the node, |k| > 0
    int helicity;    // 1 or 2
    double weight;   // momentum-space cell volume, > 0
};

// Which maps are exact permutations of the node set.  azimuthal > 0 means the
// rotation by 2*pi/azimuthal about `axis` permutes nodes; reflection_k2 is the
// sign flip of the second coordinate in the axis frame; full_rotation_orbit
// marks closure under the pi-flip about the first frame axis as well.
struct SymmetryTags {
    bool inversion = false;
    int azimuthal = 0;
    bool reflection_k2 = false;
    bool full_rotation_orbit = false;
};

class ModeGrid {
public:
    ModeGrid() = default;
    // modes must come in (k,1),(k,2) pairs sharing k and weight
    ModeGrid(std::vector<Mode> modes, Vec3 axis, SymmetryTags tags);

    std::size_t mode_count() const { return modes_.size(); }
    std::size_t kpoint_count() const { return modes_.size() / 2; }
    const std::vector<Mode>& modes() const { return modes_; }
    const Mode& mode(std::size_t i) const { return modes_[i]; }
    const Vec3& kpoint(std::size_t kp) const { return modes_[2 * kp].k; }
    double weight(std::size_t kp) const { return modes_[2 * kp].weight; }
    const Vec3& axis() const { return axis_; }
    const SymmetryTags& tags() const { return tags_; }

    double min_knorm() const;
    double max_knorm() const;
    double total_weight() const;

    // index of the k-point at x (within tol), or throws symmetry_violation
    std::size_t locate_kpoint(const Vec3& x, double tol = 1e-9) const;

    // perm[i] = index of the k-point at T * kpoint(i); throws if T does not
    // permute the node set or fails to preserve weights
    std::vector<std::size_t> kpoint_permutation(const Mat3& T, double tol = 1e-9) const;

    // all orthogonal maps generated by the declared tags, deduplicated,
    // identity first
    std::vector<Mat3> symmetry_group() const;

    // generators in the axis frame
    Mat3 inversion_map() const;
    Mat3 azimuthal_map() const;       // rotation by 2*pi/azimuthal about axis
    Mat3 reflection_k2_map() const;
    Mat3 equatorial_flip_map() const; // pi rotation about the first frame axis

private:
    std::vector<Mode> modes_;
    Vec3 axis_ = Vec3(0, 0, 1);
    Mat3 frame_ = Mat3::Identity();  // columns: adapted orthonormal frame, col 2 = axis
    SymmetryTags tags_;
};

// Product midpoint rule in spherical coordinates about `axis` over the shell
// k_min < |k| < k_max.  Angular offsets are half-cell so that inversion, the
// 2*pi/n_azimuthal rotation and the frame reflection map nodes onto nodes
// exactly; n_azimuthal must be even for the inversion closure.
ModeGrid build_cylindrical_grid(int n_radial, int n_polar, int n_azimuthal,
                                double k_min, double k_max, const Vec3& axis);

// Direct constructor for hand-placed nodes (tests, single-mode studies).
// Declares no symmetry tags.
ModeGrid make_grid_from_kpoints(const std::vector<std::pair<Vec3, double>>& kpoints,
                                const Vec3& axis = Vec3(0, 0, 1));

// orthonormal frame with column 2 equal to axis (normalized)
Mat3 axis_frame(const Vec3& axis);

}  // namespace polaron
