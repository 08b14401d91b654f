#include "special.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"
#include "factor.hpp"

namespace qcf {

namespace {

// Shared construction: U0 = [range basis | complement], F12 = Q1* A Q2,
// SVD of F12, permutation into the block direct sum order.
SpecialForm reduce_two_level(const QMatrix& a, BlockKind kind, const Tolerance& tol) {
    const int n = a.rows();
    QMatrix q1 = orthonormal_columns(a, tol);
    const int r = q1.cols();
    QMatrix u0 = complete_unitary(q1);
    QMatrix q2 = u0.block(0, r, n, n - r);
    QMatrix f12 = q1.conj_transpose() * a * q2;

    SpecialForm out;
    out.summary.kind = kind;
    QMatrix w = u0;
    int l = 0;
    if (r > 0 && n - r > 0) {
        SVDResult sv = svd(f12, tol);
        // the coupling block can be numerically zero; keep the cut anchored
        // to the input scale as well
        const double cut = tol.eps_rank * std::max(f12.frobenius(), a.frobenius());
        for (double s : sv.sigma)
            if (s > cut) out.summary.b_values.push_back(s);
        l = static_cast<int>(out.summary.b_values.size());
        QMatrix rot = sv.U.direct_sum(sv.V.conj_transpose());
        w = u0 * rot;
    }
    if (kind == BlockKind::idempotent) {
        out.summary.ones = r - l;
        out.summary.zeros = n - r - l;
    } else {
        out.summary.ones = 0;
        out.summary.zeros = n - 2 * l;
    }

    // interleave the paired coordinates: (1, r+1), ..., (l, r+l), the
    // remaining range coordinates, the remaining complement coordinates
    std::vector<int> order;
    for (int t = 0; t < l; ++t) {
        order.push_back(t);
        order.push_back(r + t);
    }
    for (int t = l; t < r; ++t) order.push_back(t);
    for (int t = r + l; t < n; ++t) order.push_back(t);
    QMatrix u(n, n);
    for (int t = 0; t < n; ++t) u.set_column(t, w.column(order[t]));
    out.U = u;
    return out;
}

} // namespace

SpecialForm projector_canonical(const QMatrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols())
        throw Error(ErrorCode::invalid_argument, "projector_canonical: matrix must be square");
    double norm = a.frobenius();
    if (residual(a * a, a) > tol.eps_canon * (1.0 + norm * norm))
        throw Error(ErrorCode::not_idempotent, "projector_canonical: A^2 differs from A");
    return reduce_two_level(a, BlockKind::idempotent, tol);
}

SpecialForm square_zero_canonical(const QMatrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols())
        throw Error(ErrorCode::invalid_argument, "square_zero_canonical: matrix must be square");
    double norm = a.frobenius();
    if ((a * a).frobenius() > tol.eps_canon * std::max(norm * norm, 1e-12))
        throw Error(ErrorCode::not_square_zero, "square_zero_canonical: A^2 is not zero");
    return reduce_two_level(a, BlockKind::square_zero, tol);
}

QMatrix assemble_blocks(const BlockSummary& summary) {
    std::vector<double> b = summary.b_values;
    std::sort(b.rbegin(), b.rend());
    const int n = 2 * static_cast<int>(b.size()) + summary.ones + summary.zeros;
    QMatrix out(n, n);
    int pos = 0;
    const double d = summary.kind == BlockKind::idempotent ? 1.0 : 0.0;
    for (double bv : b) {
        out(pos, pos) = Quaternion{d};
        out(pos, pos + 1) = Quaternion{bv};
        pos += 2;
    }
    for (int t = 0; t < summary.ones; ++t, ++pos) out(pos, pos) = Quaternion::one();
    return out;
}

std::string summary_to_json(const BlockSummary& summary) {
    nlohmann::json out{{"kind", summary.kind == BlockKind::idempotent ? "idempotent" : "square_zero"},
                       {"b_values", summary.b_values},
                       {"ones", summary.ones},
                       {"zeros", summary.zeros}};
    return out.dump();
}

} // namespace qcf
