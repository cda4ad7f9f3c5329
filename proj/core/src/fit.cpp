#include "csa/analytic.hpp"

#include "csa/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace csa {

FitReport fit_exponents(const std::vector<std::pair<double, double>> &points) {
    std::vector<std::pair<double, double>> used;
    for (const auto &[X, N] : points) {
        if (N > 0 && X >= 3) used.emplace_back(X, N);
    }
    if (used.size() < 5) throw ValidationError("fit needs at least 5 grid points with N > 0");
    Eigen::MatrixXd A(used.size(), 3);
    Eigen::VectorXd y(used.size());
    for (std::size_t i = 0; i < used.size(); ++i) {
        const double lx = std::log(used[i].first);
        A(i, 0) = lx;
        A(i, 1) = std::log(lx);
        A(i, 2) = 1.0;
        y(i) = std::log(used[i].second);
    }
    auto qr = A.colPivHouseholderQr();
    if (qr.rank() < 3) throw ValidationError("degenerate grid for the exponent fit");
    const Eigen::VectorXd coef = qr.solve(y);
    return FitReport{coef(0), coef(1) + 1.0, used.size()};
}

FitReport fit_exponents(const std::vector<CountRow> &table, bool skew) {
    std::vector<std::pair<double, double>> pts;
    for (const auto &r : table) {
        pts.emplace_back(r.X.get_d(), static_cast<double>(skew ? r.skew_count : r.count));
    }
    return fit_exponents(pts);
}

} // namespace csa
