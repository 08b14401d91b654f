#include "testkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "error.hpp"

namespace qcf {

double SeededRng::uniform() {
    return (gen_() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

int SeededRng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<uint64_t>(hi - lo + 1));
}

double SeededRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    have_spare_ = true;
    spare_ = radius * std::sin(2.0 * M_PI * u2);
    return radius * std::cos(2.0 * M_PI * u2);
}

Quaternion SeededRng::normal_quaternion() {
    return {normal(), normal(), normal(), normal()};
}

QMatrix haar_unitary(int n, SeededRng& rng) {
    Tolerance tol;
    while (true) {
        QMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                g(i, j) = rng.normal_quaternion();
        try {
            return gram_schmidt_qr(g, tol).Q;
        } catch (const Error&) {
            // singular draw; resample
        }
    }
}

QMatrix gadget_ma(const Quaternion& a) {
    QMatrix m(3, 3);
    m(0, 0) = Quaternion{3.0};
    m(0, 1) = Quaternion::one();
    m(0, 2) = a;
    m(1, 1) = Quaternion{2.0};
    m(1, 2) = Quaternion::one();
    m(2, 2) = Quaternion::one();
    return m;
}

QMatrix gadget_m5(const QMatrix& a, const QMatrix& b, const QMatrix& c, const QMatrix& d) {
    const int n = a.rows();
    for (const QMatrix* m : {&a, &b, &c, &d})
        if (m->rows() != n || m->cols() != n)
            throw Error(ErrorCode::shape_mismatch, "gadget_m5: inputs must all be n x n");
    QMatrix out(5 * n, 5 * n);
    auto ident = QMatrix::identity(n);
    for (int t = 0; t < 5; ++t) out.set_block(t * n, t * n, ident * static_cast<double>(5 - t));
    out.set_block(0, n, ident);
    out.set_block(0, 2 * n, a);
    out.set_block(0, 3 * n, c);
    out.set_block(0, 4 * n, b);
    out.set_block(n, 2 * n, ident);
    out.set_block(3 * n, 4 * n, d);
    return out;
}

GadgetPair gadget_wild(WildKind kind, const QMatrix& m, const Quaternion& lambda) {
    const int n = m.rows();
    if (m.cols() != n)
        throw Error(ErrorCode::shape_mismatch, "gadget_wild: input must be square");
    const QMatrix ident = QMatrix::identity(n);
    const QMatrix zero = QMatrix::zero(n, n);
    switch (kind) {
    case WildKind::a: {
        const QMatrix ij = ident * Quaternion::j();
        QMatrix x(4 * n, 4 * n);
        x.set_block(0, 0, ident * 4.0);
        x.set_block(0, 2 * n, ij);
        x.set_block(0, 3 * n, m * Quaternion::j());
        x.set_block(n, n, ident * 3.0);
        x.set_block(n, 2 * n, ij);
        x.set_block(n, 3 * n, ij);
        x.set_block(2 * n, 2 * n, ident * 2.0);
        x.set_block(3 * n, 3 * n, ident);
        QMatrix am(8 * n, 8 * n);
        for (int i = 0; i < 8 * n; ++i) am(i, i) = lambda;
        am.set_block(0, 4 * n, x);
        return {am, std::nullopt};
    }
    case WildKind::b: {
        QMatrix am(3 * n, 3 * n);
        am.set_block(0, n, ident);
        am.set_block(0, 2 * n, m);
        am.set_block(n, 2 * n, ident);
        return {am, std::nullopt};
    }
    case WildKind::c: {
        QMatrix first(2 * n, 2 * n);
        first.set_block(0, 0, ident);
        QMatrix second(2 * n, 2 * n);
        second.set_block(0, 0, m);
        second.set_block(0, n, ident - m);
        second.set_block(n, 0, m);
        second.set_block(n, n, ident - m);
        return {first, second};
    }
    case WildKind::d: {
        QMatrix first(2 * n, 2 * n);
        first.set_block(0, n, ident);
        QMatrix second(2 * n, 2 * n);
        second.set_block(0, n, m);
        return {first, second};
    }
    }
    throw Error(ErrorCode::invalid_argument, "gadget_wild: unknown kind");
}

namespace {

// canonical representative under cyclic rotation
bool is_necklace(const std::string& w) {
    std::string doubled = w + w;
    for (size_t s = 1; s < w.size(); ++s)
        if (doubled.compare(s, w.size(), w) < 0) return false;
    return true;
}

} // namespace

bool trace_word_oracle(const QMatrix& a, const QMatrix& b, int max_len) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::shape_mismatch, "trace_word_oracle: sizes differ");
    const int n = a.rows();
    const QMatrix astar = a.conj_transpose();
    const QMatrix bstar = b.conj_transpose();
    const double base = std::max(a.frobenius(), b.frobenius());

    for (int len = 1; len <= max_len; ++len)
        for (unsigned bits = 0; bits < (1u << len); ++bits) {
            std::string w(static_cast<size_t>(len), '0');
            for (int t = 0; t < len; ++t)
                if (bits & (1u << t)) w[static_cast<size_t>(t)] = '1';
            if (!is_necklace(w)) continue;
            QMatrix pa = QMatrix::identity(n), pb = QMatrix::identity(n);
            for (char ch : w) {
                pa = pa * (ch == '0' ? a : astar);
                pb = pb * (ch == '0' ? b : bstar);
            }
            double ta = 0.0, tb = 0.0;
            for (int i = 0; i < n; ++i) {
                ta += pa(i, i).w;
                tb += pb(i, i).w;
            }
            double scale = std::max(1.0, n * std::pow(base, len));
            if (std::abs(ta - tb) > 1e-6 * scale) return false;
        }
    return true;
}

namespace {

// distinct standard eigenvalues, separation at least 0.4
std::vector<Complex> distinct_standard_values(int count, SeededRng& rng, bool allow_nonreal) {
    std::vector<Complex> vals;
    while (static_cast<int>(vals.size()) < count) {
        bool real = !allow_nonreal || rng.uniform() < 0.45;
        Complex cand{rng.uniform(-2.0, 2.0), real ? 0.0 : rng.uniform(0.5, 2.5)};
        bool ok = true;
        for (const Complex& v : vals)
            if (std::abs(v - cand) < 0.4) ok = false;
        if (ok) vals.push_back(cand);
    }
    return vals;
}

} // namespace

PlantedNonderogatory random_nonderogatory(int n, SeededRng& rng) {
    int k = rng.uniform_int(1, n);
    std::vector<int> mult(k, 1);
    for (int extra = 0; extra < n - k; ++extra) ++mult[rng.uniform_int(0, k - 1)];
    std::vector<Complex> vals = distinct_standard_values(k, rng, true);
    std::sort(vals.begin(), vals.end(), [](const Complex& u, const Complex& v) { return succ(u, v); });

    PlantedNonderogatory out;
    out.t = QMatrix(n, n);
    int pos = 0;
    for (int t = 0; t < k; ++t)
        for (int c = 0; c < mult[t]; ++c) {
            out.diag.push_back(vals[t]);
            out.t(pos, pos) = from_complex(vals[t]);
            ++pos;
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool in_run = (j == i + 1) && out.diag[i] == out.diag[j];
            if (!in_run && rng.uniform() < 0.35) continue; // keep some zeros
            Quaternion q = rng.normal_quaternion();
            if (in_run) {
                // keep the coupling well outside Cj
                ComplexPair p = complex_split(q);
                p.z1 = std::polar(rng.uniform(0.6, 1.5), rng.uniform(0.0, 2.0 * M_PI));
                q = from_split(p.z1, p.z2);
            }
            out.t(i, j) = q;
        }
    QMatrix v = haar_unitary(n, rng);
    out.a = v.conj_transpose() * out.t * v;
    return out;
}

PlantedRealSpectrum random_real_spectrum(int n, SeededRng& rng) {
    int k = rng.uniform_int(1, std::max(1, n / 2));
    std::vector<int> mult(k, 1);
    for (int extra = 0; extra < n - k; ++extra) ++mult[rng.uniform_int(0, k - 1)];
    std::vector<Complex> vals = distinct_standard_values(k, rng, false);
    std::sort(vals.begin(), vals.end(),
              [](const Complex& u, const Complex& v) { return u.real() > v.real(); });

    EigenList eigs;
    std::vector<Partition> weyrs;
    PlantedRealSpectrum out;
    for (int t = 0; t < k; ++t) {
        Partition w = conjugate_partition(random_partition(mult[t], rng));
        eigs.push_back({vals[t], mult[t]});
        for (int x : w) {
            out.lambdas.push_back(vals[t].real());
            out.sizes.push_back(x);
        }
        weyrs.push_back(std::move(w));
    }
    QMatrix b = modified_jordan(eigs, weyrs);

    // S = U1 D U2 with singular values in [0.1, 1]: condition number <= 10
    QMatrix u1 = haar_unitary(n, rng), u2 = haar_unitary(n, rng);
    std::vector<Quaternion> dvals, dinv;
    for (int i = 0; i < n; ++i) {
        double d = rng.uniform(0.1, 1.0);
        dvals.emplace_back(d, 0.0, 0.0, 0.0);
        dinv.emplace_back(1.0 / d, 0.0, 0.0, 0.0);
    }
    QMatrix s = u1 * QMatrix::diagonal(dvals) * u2;
    QMatrix sinv = u2.conj_transpose() * QMatrix::diagonal(dinv) * u1.conj_transpose();
    out.a = s * b * sinv;
    return out;
}

std::pair<QMatrix, BlockSummary> random_projector(int n, SeededRng& rng) {
    BlockSummary summary;
    summary.kind = BlockKind::idempotent;
    int l = rng.uniform_int(0, n / 2);
    summary.ones = rng.uniform_int(0, n - 2 * l);
    summary.zeros = n - 2 * l - summary.ones;
    for (int t = 0; t < l; ++t) summary.b_values.push_back(rng.uniform(0.3, 3.0));
    std::sort(summary.b_values.rbegin(), summary.b_values.rend());
    QMatrix u = haar_unitary(n, rng);
    return {u.conj_transpose() * assemble_blocks(summary) * u, summary};
}

std::pair<QMatrix, BlockSummary> random_square_zero(int n, SeededRng& rng) {
    BlockSummary summary;
    summary.kind = BlockKind::square_zero;
    int l = rng.uniform_int(0, n / 2);
    summary.ones = 0;
    summary.zeros = n - 2 * l;
    for (int t = 0; t < l; ++t) summary.b_values.push_back(rng.uniform(0.3, 3.0));
    std::sort(summary.b_values.rbegin(), summary.b_values.rend());
    QMatrix u = haar_unitary(n, rng);
    return {u.conj_transpose() * assemble_blocks(summary) * u, summary};
}

QMatrix skew_projector(int n, int r, SeededRng& rng) {
    QMatrix u1 = haar_unitary(n, rng), u2 = haar_unitary(n, rng);
    std::vector<Quaternion> dvals, dinv;
    for (int i = 0; i < n; ++i) {
        double d = rng.uniform(0.1, 1.0);
        dvals.emplace_back(d, 0.0, 0.0, 0.0);
        dinv.emplace_back(1.0 / d, 0.0, 0.0, 0.0);
    }
    QMatrix s = u1 * QMatrix::diagonal(dvals) * u2;
    QMatrix sinv = u2.conj_transpose() * QMatrix::diagonal(dinv) * u1.conj_transpose();
    QMatrix core(n, n);
    for (int i = 0; i < r; ++i) core(i, i) = Quaternion::one();
    return s * core * sinv;
}

Partition random_partition(int n, SeededRng& rng) {
    Partition parts;
    int left = n;
    while (left > 0) {
        int p = rng.uniform_int(1, left);
        parts.push_back(p);
        left -= p;
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

std::vector<std::pair<int, int>> random_forest(int n, SeededRng& rng) {
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
    for (size_t i = all.size(); i > 1; --i)
        std::swap(all[i - 1], all[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    std::vector<std::pair<int, int>> edges;
    double keep = rng.uniform(0.2, 0.8);
    for (auto [l, r] : all) {
        if (rng.uniform() > keep) continue;
        if (find(l) == find(r)) continue;
        parent[find(l)] = find(r);
        edges.emplace_back(l, r);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

QMatrix forest_witness(int n, const std::vector<std::pair<int, int>>& edges) {
    QMatrix a(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = Quaternion{0.0, static_cast<double>(n - i), 0.0, 0.0};
    for (auto [l, r] : edges) a(l, r) = Quaternion::one();
    return a;
}

} // namespace qcf
