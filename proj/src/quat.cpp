#include "quat.hpp"

namespace qcf {

Quaternion standardizing_conjugator(const Quaternion& q, double eps_canon) {
    double beta = q.imag_norm();
    if (beta <= eps_canon * (1.0 + q.norm()))
        return Quaternion::one();
    Quaternion u = Quaternion{0.0, q.x, q.y, q.z} / beta;
    Quaternion t = Quaternion::i() + u;
    if (t.norm() <= eps_canon)
        return Quaternion::j();
    return normalized(t);
}

} // namespace qcf
