#include "nvrot/symmetric_eigen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "nvrot/errors.hpp"

namespace nvrot {

namespace {

double off_diagonal_sq(const Mat3 &a) {
    return 2.0 * (a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2));
}

// One Jacobi rotation zeroing a(p, q); a and v updated in place.
void rotate(Mat3 &a, Mat3 &v, int p, int q) {
    const double apq = a(p, q);
    if (apq == 0.0) {
        return;
    }
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
    const double c = 1.0 / std::hypot(t, 1.0);
    const double s = t * c;

    for (int k = 0; k < 3; ++k) {
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (int k = 0; k < 3; ++k) {
        const double apk = a(p, k);
        const double aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (int k = 0; k < 3; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

} // namespace

SymmetricEigen3 jacobi_eigen3(const Mat3 &input, int max_sweeps) {
    if (!input.allFinite()) {
        throw ValidationError("jacobi_eigen3: matrix has non-finite entries");
    }
    if (input != input.transpose()) {
        throw ValidationError("jacobi_eigen3: matrix is not symmetric");
    }

    Mat3 a = input;
    Mat3 v = Mat3::Identity();
    const double scale_sq = a.squaredNorm();
    const double eps = std::numeric_limits<double>::epsilon();

    int sweeps = 0;
    while (off_diagonal_sq(a) > eps * eps * eps * scale_sq) {
        if (sweeps == max_sweeps) {
            throw NumericError("jacobi_eigen3: off-diagonal reduction did not converge");
        }
        rotate(a, v, 0, 1);
        rotate(a, v, 0, 2);
        rotate(a, v, 1, 2);
        ++sweeps;
    }

    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&a](int i, int j) { return a(i, i) < a(j, j); });

    SymmetricEigen3 out;
    out.sweeps = sweeps;
    for (int k = 0; k < 3; ++k) {
        out.values(k) = a(order[k], order[k]);
        Vec3 col = v.col(order[k]);
        Eigen::Index lead = 0;
        for (Eigen::Index i = 1; i < 3; ++i) {
            if (std::abs(col(i)) > std::abs(col(lead)) + 8.0 * eps) {
                lead = i;
            }
        }
        if (col(lead) < 0.0) {
            col = -col;
        }
        out.vectors.col(k) = col;
    }
    return out;
}

} // namespace nvrot
