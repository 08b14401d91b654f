#include "littlewood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "error.hpp"

namespace qcf {

namespace {

ScalarField finer(ScalarField a, ScalarField b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

bool strictly_positive(const Complex& z) {
    return z.imag() > 0.0 || (z.imag() == 0.0 && z.real() > 0.0);
}

Complex unit_dir(const Complex& z) { return z / std::abs(z); }

} // namespace

RelationTracker::RelationTracker(std::vector<ScalarField> fields)
    : parent_(fields.size()), exp_(fields.size(), 1), field_(std::move(fields)) {
    std::iota(parent_.begin(), parent_.end(), 0);
}

int RelationTracker::find(int i) {
    if (parent_[i] == i) return i;
    int p = parent_[i];
    int root = find(p);
    exp_[i] *= exp_[p];
    parent_[i] = root;
    return root;
}

int RelationTracker::exponent(int i) {
    find(i);
    return exp_[i];
}

void RelationTracker::merge(int l, int r, int exp) {
    int rl = find(l), rr = find(r);
    if (rl == rr)
        throw Error(ErrorCode::internal, "RelationTracker::merge: classes already related");
    ScalarField merged = finer(field_[rl], field_[rr]);
    // s_rl^{exp_l} = s_l = s_r^exp = s_rr^{exp * exp_r}
    exp_[rl] = exp_[l] * exp * exp_[r];
    parent_[rl] = rr;
    field_[rr] = merged;
}

void RelationTracker::restrict_field(int i, ScalarField f) {
    int root = find(i);
    field_[root] = finer(field_[root], f);
}

std::vector<std::pair<int, int>> RelationTracker::class_members(int i) {
    int root = find(i);
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < size(); ++j)
        if (find(j) == root) out.emplace_back(j, exp_[j]);
    return out;
}

namespace {

int complex_rank(const CMatrix& m, const Tolerance& tol) {
    QMatrix q(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            q(i, j) = from_complex(m(i, j));
    return rank(q, tol);
}

} // namespace

bool is_nonderogatory(const QMatrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols())
        throw Error(ErrorCode::invalid_argument, "is_nonderogatory: matrix must be square");
    const int n = a.rows();
    EigenList eigs = right_eigenvalues(a, tol);
    CMatrix chi = adjoint_complex(a);
    for (const EigenPair& p : eigs) {
        if (p.multiplicity == 1) continue; // geometric multiplicity is forced
        CMatrix shifted = chi;
        for (int i = 0; i < 2 * n; ++i) shifted(i, i) -= p.value;
        int geom = 2 * n - complex_rank(shifted, tol);
        int want = p.value.imag() == 0.0 ? 2 : 1;
        if (geom != want) return false;
    }
    return true;
}

namespace {

// Inputs that already carry the triangular shape with a standard, sorted
// diagonal and couplings outside Cj need no new basis: the identity works.
// Keeps re-canonicalization exact.
std::optional<TriangularForm> triangular_shortcut(const QMatrix& a, const Tolerance& tol) {
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (!a(i, j).is_zero()) return std::nullopt;
    std::vector<Complex> diag;
    for (int i = 0; i < n; ++i) {
        const Quaternion& q = a(i, i);
        if (q.y != 0.0 || q.z != 0.0 || q.x < 0.0) return std::nullopt;
        diag.emplace_back(q.w, q.x);
    }
    const double cluster = tol.eps_eig * (1.0 + a.frobenius());
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(diag[i] - diag[i + 1]) <= cluster)
            diag[i + 1] = diag[i];
        else if (!succ(diag[i], diag[i + 1]))
            return std::nullopt;
    }
    const double snap = tol.eps_canon * (1.0 + a.frobenius());
    for (int i = 0; i + 1 < n; ++i)
        if (diag[i] == diag[i + 1] && std::abs(complex_split(a(i, i + 1)).z1) <= snap)
            return std::nullopt;
    TriangularForm out{QMatrix::identity(n), a, diag};
    for (int i = 0; i < n; ++i) out.T(i, i) = from_complex(diag[i]);
    return out;
}

} // namespace

TriangularForm triangularize(const QMatrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols())
        throw Error(ErrorCode::invalid_argument, "triangularize: matrix must be square");
    const int n = a.rows();
    if (auto shortcut = triangular_shortcut(a, tol)) return *shortcut;
    if (!is_nonderogatory(a, tol))
        throw Error(ErrorCode::derogatory, "triangularize: an eigenvalue has geometric multiplicity > 1");
    EigenList eigs = right_eigenvalues(a, tol);
    const double scale = 1.0 + a.frobenius();

    QMatrix s(n, n);
    std::vector<Complex> diag;
    int pos = 0;
    for (const EigenPair& p : eigs) {
        RMatrix m = sylvester_real(a, p.value);
        const double pivot_thr = tol.eps_rank * (1.0 + m.frobenius());
        auto ker = real_kernel(m, pivot_thr);
        if (ker.empty())
            throw Error(ErrorCode::chain_failure, "triangularize: no eigenvector at computed eigenvalue");
        QMatrix v = real_to_qvec(ker.front(), n);
        v = v * (1.0 / v.frobenius());
        std::vector<QMatrix> chain{v};
        const Quaternion lq = from_complex(p.value);
        for (int t = 1; t < p.multiplicity; ++t) {
            std::vector<double> rhs = qvec_to_real(chain.back());
            double bn = 0.0;
            for (double e : rhs) bn += e * e;
            bn = std::sqrt(bn);
            std::vector<double> x;
            if (!real_solve(m, rhs, x, pivot_thr, 1e-6 * (1.0 + bn)))
                throw Error(ErrorCode::chain_failure, "triangularize: chain preimage solve inconsistent");
            QMatrix w = real_to_qvec(x, n);
            QMatrix res = a * w - w * lq - chain.back();
            if (res.frobenius() > tol.eps_canon * scale * (1.0 + w.frobenius()))
                throw Error(ErrorCode::chain_failure, "triangularize: chain residual above tolerance");
            chain.push_back(w);
        }
        double mx = 0.0;
        for (const QMatrix& c : chain) mx = std::max(mx, c.frobenius());
        for (int t = 0; t < p.multiplicity; ++t) {
            s.set_column(pos + t, chain[t] * (1.0 / mx));
            diag.push_back(p.value);
        }
        pos += p.multiplicity;
    }

    TriangularForm out;
    try {
        out.U = gram_schmidt_qr(s, tol).Q;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::singular_input)
            throw Error(ErrorCode::chain_failure, "triangularize: chain basis numerically dependent");
        throw;
    }
    out.diag = diag;
    QMatrix t = out.U.conj_transpose() * a * out.U;
    const double thr = tol.eps_canon * scale;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            if (t(i, j).norm() > thr)
                throw Error(ErrorCode::chain_failure, "triangularize: lower residual above tolerance");
            t(i, j) = Quaternion::zero();
        }
    for (int i = 0; i < n; ++i) {
        if ((t(i, i) - from_complex(diag[i])).norm() > thr)
            throw Error(ErrorCode::chain_failure, "triangularize: diagonal drifted from eigenvalues");
        t(i, i) = from_complex(diag[i]);
    }
    for (int l = 0; l + 1 < n; ++l) {
        if (diag[l] != diag[l + 1]) continue;
        if (std::abs(complex_split(t(l, l + 1)).z1) <= thr)
            throw Error(ErrorCode::chain_failure,
                        "triangularize: coupling entry lies in Cj inside an equal-eigenvalue run");
    }
    out.T = t;
    return out;
}

RelationTracker initial_tracker(const std::vector<Complex>& diag) {
    std::vector<ScalarField> fields;
    fields.reserve(diag.size());
    for (const Complex& l : diag)
        fields.push_back(l.imag() > 0.0 ? ScalarField::C : ScalarField::H);
    return RelationTracker(std::move(fields));
}

bool is_fixed(const Quaternion& a, int l, int r, RelationTracker& tracker) {
    if (!tracker.related(l, r)) return a.is_zero();
    switch (tracker.field(l)) {
    case ScalarField::R:
        return true;
    case ScalarField::H:
        return a.x == 0.0 && a.y == 0.0 && a.z == 0.0;
    case ScalarField::C: {
        ComplexPair p = complex_split(a);
        return tracker.relative_exponent(l, r) == 1 ? p.z2 == Complex{} : p.z1 == Complex{};
    }
    }
    return false;
}

ReductionState::ReductionState(QMatrix t, std::vector<Complex> diag, const Tolerance& tol)
    : t_(std::move(t)), diag_(std::move(diag)), tol_(tol),
      snap_(tol.eps_canon * (1.0 + t_.frobenius())), tracker_(initial_tracker(diag_)) {
    const int n = t_.rows();
    for (int d = 1; d < n; ++d)
        for (int l = 0; l + d < n; ++l)
            order_.emplace_back(l, l + d);
}

void ReductionState::apply_diagonal(const std::vector<Quaternion>& s) {
    const int n = t_.rows();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            t_(i, j) = conjugate(s[i]) * t_(i, j) * s[j];
}

void ReductionState::fill_class(std::vector<Quaternion>& s, int index, const Quaternion& value) {
    Quaternion root_val = tracker_.exponent(index) == 1 ? value : conjugate(value);
    for (auto [i, e] : tracker_.class_members(index))
        s[i] = e == 1 ? root_val : conjugate(root_val);
}

void ReductionState::reduce_entry(int l, int r) {
    if (done() || order_[cursor_] != std::make_pair(l, r))
        throw Error(ErrorCode::order_violation,
                    "reduce_entry: entries must be reduced along the fixed superdiagonal order");
    const int step = cursor_++;
    const int n = t_.rows();

    // discrete snaps before dispatch
    Quaternion a = t_(l, r);
    if (a.norm() <= snap_) a = Quaternion::zero();
    ComplexPair p = complex_split(a);
    if (std::abs(p.z1) <= snap_) p.z1 = Complex{};
    if (std::abs(p.z2) <= snap_) p.z2 = Complex{};
    a = from_split(p.z1, p.z2);
    if (a.imag_norm() <= snap_) a = Quaternion{a.w};
    p = complex_split(a);
    t_(l, r) = a;

    LogRow row{l, r, "fixed", "", a};
    auto name = [](int i) { return "s" + std::to_string(i + 1); };

    if (!is_fixed(a, l, r, tracker_)) {
        const ScalarField fl = tracker_.field(l);
        const ScalarField fr = tracker_.field(r);
        const bool related = tracker_.related(l, r);
        std::vector<Quaternion> s(n, Quaternion::one());

        if (!related && (fl == ScalarField::H || fr == ScalarField::H)) {
            // case 1, unrelated branch: rotate the entry onto the positive reals
            const double na = a.norm();
            if (fl == ScalarField::H)
                fill_class(s, l, a * (1.0 / na));
            else
                fill_class(s, r, conjugate(a) * (1.0 / na));
            apply_diagonal(s);
            row = {l, r, "1a", name(l) + "=" + name(r), Quaternion{na}};
            tracker_.merge(l, r, +1);
            edges_.push_back({l, r, step});
        } else if (related && tracker_.field(l) == ScalarField::H) {
            // case 1, related branch: standardize, the class scalar turns complex
            Quaternion sq = standardizing_conjugator(a, tol_.eps_canon);
            fill_class(s, l, sq);
            apply_diagonal(s);
            row = {l, r, "1b", name(l) + " in C", from_complex(standardize(a))};
            tracker_.restrict_field(l, ScalarField::C);
        } else if (!related && fl == ScalarField::C && fr == ScalarField::C) {
            // case 2
            if (p.z1 != Complex{} && p.z2 != Complex{}) {
                Complex u = std::conj(unit_dir(p.z1));
                Complex v = std::conj(unit_dir(p.z2));
                Complex sl = 1.0 / std::sqrt(u * v);
                fill_class(s, l, from_complex(sl));
                fill_class(s, r, from_complex(sl * u));
                apply_diagonal(s);
                row = {l, r, "2a", name(l) + "=" + name(r) + " in R",
                       from_split(std::abs(p.z1), std::abs(p.z2))};
                tracker_.merge(l, r, +1);
                tracker_.restrict_field(l, ScalarField::R);
            } else if (p.z1 != Complex{}) {
                fill_class(s, r, from_complex(std::conj(unit_dir(p.z1))));
                apply_diagonal(s);
                row = {l, r, "2b", name(l) + "=" + name(r), Quaternion{std::abs(p.z1)}};
                tracker_.merge(l, r, +1);
            } else {
                fill_class(s, r, from_complex(unit_dir(p.z2)));
                apply_diagonal(s);
                row = {l, r, "2c", name(l) + "=" + name(r) + "^-1",
                       from_split(Complex{}, std::abs(p.z2))};
                tracker_.merge(l, r, -1);
            }
            edges_.push_back({l, r, step});
        } else if (related && tracker_.field(l) == ScalarField::C) {
            // case 3
            if (tracker_.relative_exponent(l, r) == 1) {
                Complex sq = std::sqrt(unit_dir(p.z2));
                fill_class(s, l, from_complex(sq));
                apply_diagonal(s);
                row = {l, r, "3a", name(l) + " in R", from_split(p.z1, std::abs(p.z2))};
            } else {
                Complex sq = std::sqrt(unit_dir(p.z1));
                fill_class(s, l, from_complex(sq));
                apply_diagonal(s);
                row = {l, r, "3b", name(l) + " in R", from_split(std::abs(p.z1), p.z2)};
            }
            tracker_.restrict_field(l, ScalarField::R);
        } else if (!related && ((fl == ScalarField::C && fr == ScalarField::R) ||
                                (fl == ScalarField::R && fr == ScalarField::C))) {
            // case 4: the modulus-preserving normalization — z1 (or z2 when
            // z1 = 0) rotated onto the positive reals, the other component
            // carried along
            Quaternion canonical;
            if (p.z1 != Complex{}) {
                if (fl == ScalarField::C) {
                    fill_class(s, l, from_complex(unit_dir(p.z1)));
                    canonical = from_split(std::abs(p.z1), p.z2 * std::conj(unit_dir(p.z1)));
                } else {
                    fill_class(s, r, from_complex(std::conj(unit_dir(p.z1))));
                    canonical = from_split(std::abs(p.z1), p.z2 * unit_dir(p.z1));
                }
            } else {
                if (fl == ScalarField::C)
                    fill_class(s, l, from_complex(unit_dir(p.z2)));
                else
                    fill_class(s, r, from_complex(unit_dir(p.z2)));
                canonical = from_split(Complex{}, std::abs(p.z2));
            }
            apply_diagonal(s);
            row = {l, r, "4", name(l) + "=" + name(r) + " in R", canonical};
            tracker_.merge(l, r, +1);
            tracker_.restrict_field(l, ScalarField::R);
            edges_.push_back({l, r, step});
        } else {
            // case 5: both real, the sign making the leading component
            // positive under the eigenvalue ordering
            Complex lead = p.z1 != Complex{} ? p.z1 : p.z2;
            double sigma = strictly_positive(lead) ? 1.0 : -1.0;
            fill_class(s, r, Quaternion{sigma});
            apply_diagonal(s);
            row = {l, r, "5", name(l) + "=" + name(r), a * sigma};
            tracker_.merge(l, r, +1);
            edges_.push_back({l, r, step});
        }
        t_(l, r) = row.value;
    }
    log_.push_back(row);
}

void ReductionState::run_all() {
    while (!done()) {
        auto [l, r] = order_[cursor_];
        reduce_entry(l, r);
    }
}

CanonicalResult ReductionState::result() const {
    CanonicalResult out;
    out.canon = t_;
    for (const LogRow& row : log_) out.canon(row.l, row.r) = row.value;
    for (size_t i = 0; i < diag_.size(); ++i)
        out.canon(static_cast<int>(i), static_cast<int>(i)) = from_complex(diag_[i]);
    out.diag = diag_;
    out.edges = edges_;
    out.log = log_;
    return out;
}

CanonicalResult canonical_form(const QMatrix& a, const Tolerance& tol) {
    TriangularForm tf = triangularize(a, tol);
    ReductionState state(tf.T, tf.diag, tol);
    state.run_all();
    return state.result();
}

bool unitarily_similar(const QMatrix& a, const QMatrix& b, const Tolerance& tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    CanonicalResult ca = canonical_form(a, tol);
    CanonicalResult cb = canonical_form(b, tol);
    if (ca.log.size() != cb.log.size() || ca.edges.size() != cb.edges.size()) return false;
    for (size_t i = 0; i < ca.log.size(); ++i)
        if (ca.log[i].case_id != cb.log[i].case_id) return false;
    for (size_t i = 0; i < ca.edges.size(); ++i)
        if (ca.edges[i].l != cb.edges[i].l || ca.edges[i].r != cb.edges[i].r) return false;
    const double thr = tol.eps_canon * (1.0 + std::max(ca.canon.frobenius(), cb.canon.frobenius()));
    for (int i = 0; i < ca.canon.rows(); ++i)
        for (int j = 0; j < ca.canon.cols(); ++j)
            if ((ca.canon(i, j) - cb.canon(i, j)).norm() > thr) return false;
    return true;
}

std::vector<std::pair<int, int>> graph(const CanonicalResult& result) {
    std::vector<std::pair<int, int>> out;
    out.reserve(result.edges.size());
    for (const GraphEdge& e : result.edges) out.emplace_back(e.l, e.r);
    return out;
}

Decomposition decompose(const CanonicalResult& result, const Tolerance& tol) {
    const int n = result.canon.rows();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (const GraphEdge& e : result.edges) parent[find(e.l)] = find(e.r);

    std::vector<std::vector<int>> comps;
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        bool found = false;
        for (auto& c : comps)
            if (find(c.front()) == root) {
                c.push_back(i);
                found = true;
                break;
            }
        if (!found) comps.push_back({i});
    }
    // components in least-vertex order, vertices ascending by construction
    std::sort(comps.begin(), comps.end(),
              [](const std::vector<int>& x, const std::vector<int>& y) { return x.front() < y.front(); });

    Decomposition out;
    for (const auto& c : comps)
        for (int v : c) out.permutation.push_back(v);

    const double thr = tol.eps_canon * (1.0 + result.canon.frobenius());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (find(i) == find(j)) continue;
            if (result.canon(i, j).norm() > thr)
                throw Error(ErrorCode::not_block_diagonal,
                            "decompose: entry couples vertices in different graph components");
        }

    QMatrix permuted = result.canon.symmetric_permute(out.permutation);
    int pos = 0;
    for (const auto& c : comps) {
        int k = static_cast<int>(c.size());
        out.blocks.push_back(permuted.block(pos, pos, k, k));
        pos += k;
    }
    return out;
}

std::string canonical_to_json(const CanonicalResult& result) {
    nlohmann::json edges = nlohmann::json::array();
    for (const GraphEdge& e : result.edges) edges.push_back({e.l + 1, e.r + 1});
    nlohmann::json log = nlohmann::json::array();
    for (const LogRow& row : result.log)
        log.push_back({{"entry", {row.l + 1, row.r + 1}}, {"case", row.case_id}, {"deltaR", row.delta_r}});
    nlohmann::json out{{"canon", nlohmann::json::parse(matrix_to_json(result.canon))},
                       {"edges", edges},
                       {"log", log}};
    return out.dump();
}

std::string decomposition_to_json(const Decomposition& d) {
    nlohmann::json perm = nlohmann::json::array();
    for (int v : d.permutation) perm.push_back(v + 1);
    nlohmann::json blocks = nlohmann::json::array();
    for (const QMatrix& b : d.blocks) blocks.push_back(nlohmann::json::parse(matrix_to_json(b)));
    nlohmann::json out{{"permutation", perm}, {"blocks", blocks}};
    return out.dump();
}

} // namespace qcf
