#include "polaron/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace polaron {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_vec(const Vec3& v) {
    std::ostringstream os;
    os << "(" << v.x() << ", " << v.y() << ", " << v.z() << ")";
    return os.str();
}

}  // namespace

Mat3 axis_frame(const Vec3& axis) {
    require(axis.norm() > 0, ErrorCode::invalid_argument, "grid axis must be nonzero");
    Vec3 e3 = axis.normalized();
    // pick the world axis least aligned with e3 as seed for e1
    Vec3 seed = std::abs(e3.x()) <= std::abs(e3.y())
                    ? (std::abs(e3.x()) <= std::abs(e3.z()) ? Vec3(1, 0, 0) : Vec3(0, 0, 1))
                    : (std::abs(e3.y()) <= std::abs(e3.z()) ? Vec3(0, 1, 0) : Vec3(0, 0, 1));
    Vec3 e1 = (seed - seed.dot(e3) * e3).normalized();
    Vec3 e2 = e3.cross(e1);
    Mat3 f;
    f.col(0) = e1;
    f.col(1) = e2;
    f.col(2) = e3;
    return f;
}

ModeGrid::ModeGrid(std::vector<Mode> modes, Vec3 axis, SymmetryTags tags)
    : modes_(std::move(modes)), axis_(axis.normalized()), tags_(tags) {
    require(!modes_.empty() && modes_.size() % 2 == 0, ErrorCode::invalid_argument,
            "grid modes must come in helicity pairs");
    frame_ = axis_frame(axis_);
    for (std::size_t kp = 0; kp < kpoint_count(); ++kp) {
        const Mode& a = modes_[2 * kp];
        const Mode& b = modes_[2 * kp + 1];
        require(a.helicity == 1 && b.helicity == 2, ErrorCode::invalid_argument,
                "helicity pair ordering must be (k,1),(k,2)");
        require((a.k - b.k).norm() == 0.0 && a.weight == b.weight,
                ErrorCode::invalid_argument, "helicity pair must share node and weight");
        require(a.k.norm() > 0, ErrorCode::invalid_argument,
                "k = 0 is not an admissible grid node");
        require(a.weight > 0, ErrorCode::invalid_argument, "weights must be positive");
    }
}

double ModeGrid::min_knorm() const {
    double r = modes_[0].k.norm();
    for (std::size_t kp = 1; kp < kpoint_count(); ++kp) r = std::min(r, kpoint(kp).norm());
    return r;
}

double ModeGrid::max_knorm() const {
    double r = 0;
    for (std::size_t kp = 0; kp < kpoint_count(); ++kp) r = std::max(r, kpoint(kp).norm());
    return r;
}

double ModeGrid::total_weight() const {
    double w = 0;
    for (std::size_t kp = 0; kp < kpoint_count(); ++kp) w += weight(kp);
    return w;
}

std::size_t ModeGrid::locate_kpoint(const Vec3& x, double tol) const {
    // linear scan; grids here stay at desk scale
    std::size_t best = kpoint_count();
    double best_d = tol;
    for (std::size_t kp = 0; kp < kpoint_count(); ++kp) {
        double d = (kpoint(kp) - x).norm();
        if (d <= best_d) {
            best = kp;
            best_d = d;
        }
    }
    if (best == kpoint_count())
        fail(ErrorCode::symmetry_violation,
             "momentum point " + format_vec(x) + " is not a grid node");
    return best;
}

std::vector<std::size_t> ModeGrid::kpoint_permutation(const Mat3& T, double tol) const {
    std::vector<std::size_t> perm(kpoint_count());
    std::vector<bool> hit(kpoint_count(), false);
    for (std::size_t kp = 0; kp < kpoint_count(); ++kp) {
        std::size_t tgt = locate_kpoint(T * kpoint(kp), tol);
        require(!hit[tgt], ErrorCode::symmetry_violation, "map is not a node permutation");
        require(std::abs(weight(tgt) - weight(kp)) <= tol * (1.0 + weight(kp)),
                ErrorCode::symmetry_violation, "map does not preserve weights");
        hit[tgt] = true;
        perm[kp] = tgt;
    }
    return perm;
}

Mat3 ModeGrid::inversion_map() const { return -Mat3::Identity(); }

Mat3 ModeGrid::azimuthal_map() const {
    require(tags_.azimuthal > 0, ErrorCode::symmetry_violation, "grid has no azimuthal tag");
    double phi = 2.0 * kPi / tags_.azimuthal;
    Mat3 rot_z;
    rot_z << std::cos(phi), -std::sin(phi), 0, std::sin(phi), std::cos(phi), 0, 0, 0, 1;
    return frame_ * rot_z * frame_.transpose();
}

Mat3 ModeGrid::reflection_k2_map() const {
    Mat3 r = Mat3::Identity();
    r(1, 1) = -1;
    return frame_ * r * frame_.transpose();
}

Mat3 ModeGrid::equatorial_flip_map() const {
    Mat3 r = Mat3::Identity();
    r(1, 1) = -1;
    r(2, 2) = -1;
    return frame_ * r * frame_.transpose();
}

std::vector<Mat3> ModeGrid::symmetry_group() const {
    std::vector<Mat3> gens;
    if (tags_.azimuthal > 0) gens.push_back(azimuthal_map());
    if (tags_.inversion) gens.push_back(inversion_map());
    if (tags_.reflection_k2) gens.push_back(reflection_k2_map());
    if (tags_.full_rotation_orbit) gens.push_back(equatorial_flip_map());

    std::map<std::array<long long, 9>, Mat3> seen;
    auto key = [](const Mat3& m) {
        std::array<long long, 9> k;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                k[3 * i + j] = static_cast<long long>(std::llround(m(i, j) * 1e9));
        return k;
    };
    std::vector<Mat3> group{Mat3::Identity()};
    seen.emplace(key(group[0]), group[0]);
    // closure under generator multiplication; groups here are tiny
    for (std::size_t head = 0; head < group.size(); ++head) {
        for (const Mat3& g : gens) {
            Mat3 next = g * group[head];
            auto k = key(next);
            if (!seen.count(k)) {
                seen.emplace(k, next);
                group.push_back(next);
            }
        }
        require(group.size() <= 1024, ErrorCode::internal, "symmetry group closure diverged");
    }
    return group;
}

ModeGrid build_cylindrical_grid(int n_radial, int n_polar, int n_azimuthal,
                                double k_min, double k_max, const Vec3& axis) {
    require(n_radial >= 1 && n_polar >= 1 && n_azimuthal >= 1,
            ErrorCode::invalid_argument, "grid counts must be >= 1");
    require(n_azimuthal % 2 == 0, ErrorCode::invalid_argument,
            "n_azimuthal must be even so inversion closes the node set");
    require(0 < k_min && k_min < k_max, ErrorCode::invalid_argument,
            "require 0 < k_min < k_max");

    Mat3 frame = axis_frame(axis);
    double dr = (k_max - k_min) / n_radial;
    double dtheta = kPi / n_polar;
    double dphi = 2.0 * kPi / n_azimuthal;

    std::vector<Mode> modes;
    modes.reserve(static_cast<std::size_t>(2 * n_radial * n_polar * n_azimuthal));
    for (int ir = 0; ir < n_radial; ++ir) {
        double r0 = k_min + ir * dr;
        double r1 = r0 + dr;
        double r = 0.5 * (r0 + r1);
        for (int it = 0; it < n_polar; ++it) {
            double t0 = it * dtheta;
            double t1 = t0 + dtheta;
            double theta = 0.5 * (t0 + t1);
            // exact spherical cell volume
            double w = (r1 * r1 * r1 - r0 * r0 * r0) / 3.0 *
                       (std::cos(t0) - std::cos(t1)) * dphi;
            for (int ip = 0; ip < n_azimuthal; ++ip) {
                double phi = (ip + 0.5) * dphi;  // half-cell offset, see header
                Vec3 local(r * std::sin(theta) * std::cos(phi),
                           r * std::sin(theta) * std::sin(phi),
                           r * std::cos(theta));
                Vec3 k = frame * local;
                modes.push_back({k, 1, w});
                modes.push_back({k, 2, w});
            }
        }
    }

    SymmetryTags tags;
    tags.inversion = true;
    tags.azimuthal = n_azimuthal;
    tags.reflection_k2 = true;
    tags.full_rotation_orbit = true;
    ModeGrid grid(std::move(modes), axis, tags);

    // the offsets above are chosen to close every declared map; verify anyway
    for (const Mat3& g :
         {grid.inversion_map(), grid.azimuthal_map(), grid.reflection_k2_map(),
          grid.equatorial_flip_map()}) {
        grid.kpoint_permutation(g);
    }
    return grid;
}

ModeGrid make_grid_from_kpoints(const std::vector<std::pair<Vec3, double>>& kpoints,
                                const Vec3& axis) {
    std::vector<Mode> modes;
    modes.reserve(2 * kpoints.size());
    for (const auto& [k, w] : kpoints) {
        modes.push_back({k, 1, w});
        modes.push_back({k, 2, w});
    }
    return ModeGrid(std::move(modes), axis, SymmetryTags{});
}

}  // namespace polaron
