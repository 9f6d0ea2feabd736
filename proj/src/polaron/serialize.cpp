#include "polaron/serialize.hpp"

namespace polaron {

ordered_json operator_to_json(const OperatorMatrix& op) {
    ordered_json j;
    j["schema"] = "polaron-operator-v1";
    j["dim"] = op.dim();
    j["hermitian"] = op.hermitian();
    ordered_json entries = ordered_json::array();
    const SpMat& m = op.raw();
    for (int r = 0; r < m.outerSize(); ++r)
        for (SpMat::InnerIterator it(m, r); it; ++it)
            entries.push_back({it.row(), it.col(), it.value().real(), it.value().imag()});
    j["entries"] = std::move(entries);
    return j;
}

OperatorMatrix operator_from_json(const ordered_json& j) {
    require(j.value("schema", "") == "polaron-operator-v1", ErrorCode::parse_error,
            "unexpected operator schema");
    Eigen::Index dim = j.at("dim").get<Eigen::Index>();
    std::vector<Triplet> ts;
    for (const auto& e : j.at("entries")) {
        require(e.is_array() && e.size() == 4, ErrorCode::parse_error,
                "operator entry must be [row, col, re, im]");
        ts.emplace_back(e[0].get<Eigen::Index>(), e[1].get<Eigen::Index>(),
                        Complex(e[2].get<double>(), e[3].get<double>()));
    }
    return OperatorMatrix::from_triplets(dim, ts, j.value("hermitian", false));
}

ordered_json basis_to_json(const FockBasis& basis) {
    ordered_json j;
    j["schema"] = "polaron-basis-v1";
    const ModeGrid& grid = basis.grid();
    j["n_kpoints"] = grid.kpoint_count();
    j["n_modes"] = grid.mode_count();
    j["n_max"] = basis.n_max();
    j["axis"] = {grid.axis().x(), grid.axis().y(), grid.axis().z()};
    ordered_json kpts = ordered_json::array();
    for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
        const Vec3& k = grid.kpoint(kp);
        kpts.push_back({k.x(), k.y(), k.z(), grid.weight(kp)});
    }
    j["kpoints"] = std::move(kpts);
    ordered_json states = ordered_json::array();
    for (std::size_t s = 0; s < basis.size(); ++s) {
        ordered_json occ = ordered_json::array();
        for (auto n : basis.state(s)) occ.push_back(static_cast<int>(n));
        states.push_back(std::move(occ));
    }
    j["states"] = std::move(states);
    return j;
}

}  // namespace polaron
