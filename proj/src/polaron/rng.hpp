// rng.hpp — small deterministic generator; identical streams on every platform

#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "polaron/types.hpp"

namespace polaron {

// splitmix64; fixed algorithm so seeded runs reproduce bit-for-bit anywhere
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform in [-1, 1)
    double symmetric() { return 2.0 * uniform() - 1.0; }

    Complex complex_symmetric() { return Complex(symmetric(), symmetric()); }

    Eigen::VectorXcd complex_vector(Eigen::Index n) {
        Eigen::VectorXcd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = complex_symmetric();
        return v;
    }

    Eigen::VectorXcd unit_vector(Eigen::Index n) {
        Eigen::VectorXcd v = complex_vector(n);
        double nrm = v.norm();
        if (nrm == 0.0) { v[0] = 1.0; nrm = 1.0; }
        return v / nrm;
    }

    Vec3 vec3(double lo, double hi) {
        return Vec3(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi));
    }

private:
    std::uint64_t state_;
};

}  // namespace polaron
