#include "pseudofib/indefinite.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace pseudofib {

std::vector<std::vector<double>> kernel_basis(const RealMatrix& map, double tol) {
    if (map.empty()) return {};
    const int rows = static_cast<int>(map.size());
    const int cols = static_cast<int>(map[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(map[r].size()) != cols)
            throw ContractViolation("kernel_basis: ragged matrix");
        for (int c = 0; c < cols; ++c) {
            if (!std::isfinite(map[r][c])) throw ContractViolation("kernel_basis: non-finite entry");
            m(r, c) = map[r][c];
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double cut = tol * smax;

    std::vector<std::vector<double>> basis;
    for (int c = 0; c < cols; ++c) {
        const double s = c < sv.size() ? sv(c) : 0.0;
        if (s <= cut) {
            std::vector<double> v(cols);
            for (int r = 0; r < cols; ++r) v[r] = svd.matrixV()(r, c);
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

}  // namespace pseudofib
