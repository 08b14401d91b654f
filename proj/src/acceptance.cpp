#include "acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "littlewood.hpp"
#include "schur.hpp"
#include "special.hpp"
#include "testkit.hpp"

namespace qcf {

namespace {

bool edges_form_forest(int n, const std::vector<GraphEdge>& edges) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (const GraphEdge& e : edges) {
        int a = find(e.l), b = find(e.r);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

bool same_discrete_log(const CanonicalResult& x, const CanonicalResult& y) {
    if (x.log.size() != y.log.size() || x.edges.size() != y.edges.size()) return false;
    for (size_t i = 0; i < x.log.size(); ++i)
        if (x.log[i].case_id != y.log[i].case_id || x.log[i].l != y.log[i].l ||
            x.log[i].r != y.log[i].r)
            return false;
    for (size_t i = 0; i < x.edges.size(); ++i)
        if (x.edges[i].l != y.edges[i].l || x.edges[i].r != y.edges[i].r) return false;
    return true;
}

double entrywise_gap(const QMatrix& a, const QMatrix& b) {
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            worst = std::max(worst, (a(i, j) - b(i, j)).norm());
    return worst;
}

struct SuiteState {
    int forest_checks = 0;
    int forest_violations = 0;
    void note(const CanonicalResult& r) {
        ++forest_checks;
        if (!edges_form_forest(r.canon.rows(), r.edges)) ++forest_violations;
    }
};

std::string count_detail(int fails, int trials, const std::string& extra = "") {
    std::ostringstream os;
    os << trials - fails << "/" << trials << " trials pass";
    if (!extra.empty()) os << "; " << extra;
    return os.str();
}

CriterionResult criterion_canonical_invariance(uint64_t seed, SuiteState& suite, int& oracle_fails) {
    Tolerance tol;
    SeededRng rng(seed);
    const int trials = 300;
    int fails = 0;
    double worst = 0.0;
    oracle_fails = 0;
    for (int t = 0; t < trials; ++t) {
        int n = 2 + t % 5;
        PlantedNonderogatory inst = random_nonderogatory(n, rng);
        QMatrix u = haar_unitary(n, rng);
        QMatrix conj = u.conj_transpose() * inst.a * u;
        CanonicalResult ca = canonical_form(inst.a, tol);
        CanonicalResult cb = canonical_form(conj, tol);
        suite.note(ca);
        suite.note(cb);
        double gap = entrywise_gap(ca.canon, cb.canon);
        worst = std::max(worst, gap);
        if (gap > 1e-6 || !same_discrete_log(ca, cb)) ++fails;
        if (!trace_word_oracle(inst.a, conj, 4)) ++oracle_fails;
    }
    std::ostringstream extra;
    extra << "worst entry gap " << worst;
    return {1, "canonical invariance under Haar conjugation", fails == 0,
            count_detail(fails, trials, extra.str())};
}

CriterionResult criterion_canonical_separation(uint64_t seed, SuiteState& suite,
                                               int& contradiction_count) {
    Tolerance tol;
    SeededRng rng(seed);
    const int trials = 100;
    int fails = 0;
    contradiction_count = 0;
    for (int t = 0; t < trials; ++t) {
        int n = 2 + t % 5;
        QMatrix pa, pb;
        int flavor = t % 4;
        if (flavor == 0) {
            // same forest, one edge value scaled
            auto edges = random_forest(n, rng);
            if (edges.empty()) edges.emplace_back(0, 1);
            pa = forest_witness(n, edges);
            pb = pa;
            pb(edges[0].first, edges[0].second) = Quaternion{2.0};
        } else if (flavor == 1) {
            // different forests over the same diagonal
            auto e1 = random_forest(n, rng);
            auto e2 = random_forest(n, rng);
            while (e2 == e1) e2 = random_forest(n, rng);
            pa = forest_witness(n, e1);
            pb = forest_witness(n, e2);
        } else if (flavor == 2) {
            // shifted diagonal
            auto edges = random_forest(n, rng);
            pa = forest_witness(n, edges);
            pb = pa;
            pb(n - 1, n - 1) = Quaternion{0.0, 0.25, 0.0, 0.0};
        } else {
            // real diagonal chain with distinct coupling moduli
            pa = QMatrix(n, n);
            pb = QMatrix(n, n);
            for (int i = 0; i < n; ++i) {
                pa(i, i) = Quaternion{static_cast<double>(n - i)};
                pb(i, i) = pa(i, i);
                if (i + 1 < n) {
                    pa(i, i + 1) = Quaternion::one();
                    pb(i, i + 1) = Quaternion{1.0 + 0.5 * (i + 1)};
                }
            }
        }
        QMatrix u = haar_unitary(n, rng), w = haar_unitary(n, rng);
        QMatrix a = u.conj_transpose() * pa * u;
        QMatrix b = w.conj_transpose() * pb * w;
        bool similar = unitarily_similar(a, b, tol);
        suite.note(canonical_form(a, tol));
        suite.note(canonical_form(b, tol));
        if (similar) ++fails;
        bool oracle = trace_word_oracle(a, b, 4);
        if (similar && !oracle) ++contradiction_count;
    }
    return {2, "canonical separation of distinct invariants", fails == 0,
            count_detail(fails, trials)};
}

CriterionResult criterion_strengthened_schur(uint64_t seed) {
    Tolerance tol;
    SeededRng rng(seed);
    const int trials = 200;
    int fails = 0;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        int n = 2 + t % 5;
        PlantedRealSpectrum inst = random_real_spectrum(n, rng);
        bool ok = true;
        try {
            SchurRealForm form = strengthened_schur(inst.a, tol);
            double rel = residual(form.U.conj_transpose() * inst.a * form.U, form.F) /
                         std::max(inst.a.frobenius(), 1e-300);
            worst = std::max(worst, rel);
            if (rel > 1e-8) ok = false;
            // exact shape of the output
            if (form.sizes != inst.sizes) ok = false;
            for (size_t i = 0; ok && i < form.lambdas.size(); ++i)
                if (std::abs(form.lambdas[i] - inst.lambdas[i]) > 1e-6) ok = false;
            std::vector<int> start(form.sizes.size() + 1, 0);
            for (size_t b = 0; b < form.sizes.size(); ++b) start[b + 1] = start[b] + form.sizes[b];
            for (size_t b = 0; ok && b < form.sizes.size(); ++b)
                for (int i = start[b]; ok && i < start[b + 1]; ++i)
                    for (int j = 0; j <= i; ++j) {
                        Quaternion want =
                            i == j ? Quaternion{form.lambdas[b]} : Quaternion::zero();
                        if (j >= start[b] && !(form.F(i, j) == want)) { ok = false; break; }
                        if (j < start[b] && !form.F(i, j).is_zero()) { ok = false; break; }
                    }
            for (size_t b = 0; ok && b + 1 < form.sizes.size(); ++b) {
                if (form.lambdas[b] != form.lambdas[b + 1]) continue;
                if (form.sizes[b] < form.sizes[b + 1]) { ok = false; break; }
                for (int i = 0; ok && i < form.sizes[b]; ++i)
                    for (int j = 0; j < form.sizes[b + 1]; ++j) {
                        const Quaternion& q = form.F(start[b] + i, start[b + 1] + j);
                        if (i > j && !q.is_zero()) { ok = false; break; }
                        if (i == j && !(q.x == 0.0 && q.y == 0.0 && q.z == 0.0 && q.w > tol.eps_canon)) {
                            ok = false;
                            break;
                        }
                    }
            }
            // block data invariant under another Haar conjugation
            QMatrix w = haar_unitary(n, rng);
            SchurRealForm again = strengthened_schur(w.conj_transpose() * inst.a * w, tol);
            if (again.sizes != form.sizes) ok = false;
            for (size_t i = 0; ok && i < form.lambdas.size(); ++i)
                if (std::abs(again.lambdas[i] - form.lambdas[i]) > 1e-6) ok = false;
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) ++fails;
    }
    std::ostringstream extra;
    extra << "worst relative residual " << worst;
    return {3, "strengthened Schur form on real spectra", fails == 0,
            count_detail(fails, trials, extra.str())};
}

CriterionResult criterion_weyr_identity(uint64_t seed) {
    Tolerance tol;
    SeededRng rng(seed);
    const int trials = 50;
    int fails = 0;
    for (int t = 0; t < trials; ++t) {
        int n = 2 + t % 5;
        Partition segre = random_partition(n, rng);
        Partition weyr = conjugate_partition(segre);
        EigenList eigs{{Complex{0.0, 0.0}, n}};
        QMatrix a0 = modified_jordan(eigs, {weyr});
        QMatrix u = haar_unitary(n, rng);
        QMatrix a = u.conj_transpose() * a0 * u;
        const int s = static_cast<int>(weyr.size());
        bool ok = true;
        for (int l = 1; l <= s; ++l) {
            int expect = 0;
            for (int i = l; i < s; ++i) expect += weyr[i];
            if (rank(a.power(l), tol) != expect) { ok = false; break; }
        }
        if (!ok) ++fails;
    }
    return {4, "Weyr rank identity on planted nilpotents", fails == 0,
            count_detail(fails, trials)};
}

CriterionResult criterion_special_forms(uint64_t seed) {
    Tolerance tol;
    SeededRng rng(seed);
    const int trials = 200;
    int fails = 0;
    for (int t = 0; t < trials; ++t) {
        int n = 2 + t % 5;
        bool idem = t % 2 == 0;
        auto [a, planted] = idem ? random_projector(n, rng) : random_square_zero(n, rng);
        bool ok = true;
        try {
            SpecialForm form = idem ? projector_canonical(a, tol) : square_zero_canonical(a, tol);
            if (form.summary.ones != planted.ones || form.summary.zeros != planted.zeros ||
                form.summary.b_values.size() != planted.b_values.size())
                ok = false;
            for (size_t i = 0; ok && i < planted.b_values.size(); ++i)
                if (std::abs(form.summary.b_values[i] - planted.b_values[i]) > 1e-8) ok = false;
            QMatrix canon = assemble_blocks(form.summary);
            if (idem) {
                if (!(canon * canon == canon)) ok = false;
            } else {
                if (!((canon * canon) == QMatrix::zero(n, n))) ok = false;
            }
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) ++fails;
    }
    return {5, "projector and square-zero canonical forms", fails == 0,
            count_detail(fails, trials)};
}

CriterionResult criterion_forest_realizability(uint64_t seed, SuiteState& suite,
                                               std::vector<CanonicalResult>& kept) {
    Tolerance tol;
    SeededRng rng(seed);
    const int trials = 50;
    int fails = 0;
    for (int t = 0; t < trials; ++t) {
        int n = 2 + t % 5;
        auto edges = random_forest(n, rng);
        QMatrix witness = forest_witness(n, edges);
        CanonicalResult res = canonical_form(witness, tol);
        suite.note(res);
        kept.push_back(res);
        bool ok = entrywise_gap(res.canon, witness) <= 1e-6;
        auto got = graph(res);
        std::sort(got.begin(), got.end());
        if (got != edges) ok = false;
        if (!ok) ++fails;
    }
    return {7, "any forest is realized by its witness matrix", fails == 0,
            count_detail(fails, trials)};
}

CriterionResult criterion_decomposition(uint64_t seed, const std::vector<CanonicalResult>& pool) {
    Tolerance tol;
    SeededRng rng(seed);
    int fails = 0;
    int checked = 0;
    for (const CanonicalResult& res : pool) {
        ++checked;
        bool ok = true;
        try {
            Decomposition dec = decompose(res, tol);
            for (const QMatrix& block : dec.blocks) {
                CanonicalResult again = canonical_form(block, tol);
                if (entrywise_gap(again.canon, block) > 1e-6) ok = false;
                if (!edges_form_forest(block.rows(), again.edges)) ok = false;
                if (static_cast<int>(again.edges.size()) != block.rows() - 1) ok = false;
            }
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) ++fails;
    }
    // a few extra random instances decomposed end to end
    Tolerance t2;
    for (int t = 0; t < 25; ++t) {
        int n = 2 + t % 5;
        PlantedNonderogatory inst = random_nonderogatory(n, rng);
        ++checked;
        bool ok = true;
        try {
            CanonicalResult res = canonical_form(inst.a, t2);
            Decomposition dec = decompose(res, t2);
            int total = 0;
            for (const QMatrix& block : dec.blocks) {
                total += block.rows();
                CanonicalResult again = canonical_form(block, t2);
                if (entrywise_gap(again.canon, block) > 1e-6) ok = false;
                if (static_cast<int>(again.edges.size()) != block.rows() - 1) ok = false;
            }
            if (total != n) ok = false;
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) ++fails;
    }
    return {8, "graph components decompose the canonical matrix", fails == 0,
            count_detail(fails, checked)};
}

CriterionResult criterion_gadget(uint64_t seed) {
    Tolerance tol;
    SeededRng rng(seed);
    const int trials = 100;
    int fails = 0;
    for (int t = 0; t < trials; ++t) {
        Quaternion a = rng.normal_quaternion();
        Quaternion b;
        if (t % 2 == 0) {
            Quaternion s = normalized(rng.normal_quaternion());
            b = conjugate(s) * a * s; // similar to a, standardize agrees
        } else {
            b = rng.normal_quaternion();
        }
        bool expect = std::abs(standardize(a) - standardize(b)) <= tol.eps_canon * (1.0 + a.norm());
        bool got = unitarily_similar(gadget_ma(a), gadget_ma(b), tol);
        if (got != expect) ++fails;
    }
    return {9, "M_a gadget similarity matches eigenvalue standardization", fails == 0,
            count_detail(fails, trials)};
}

CriterionResult criterion_svd(uint64_t seed) {
    Tolerance tol;
    SeededRng rng(seed);
    const int trials = 200;
    int fails = 0;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        int m = 1 + t % 6;
        int n = 1 + (t / 2) % 6;
        QMatrix a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = rng.normal_quaternion();
        bool ok = true;
        try {
            SVDResult sv = svd(a, tol);
            QMatrix sigma(m, n);
            for (size_t i = 0; i < sv.sigma.size(); ++i)
                sigma(static_cast<int>(i), static_cast<int>(i)) = Quaternion{sv.sigma[i]};
            double rel = residual(a, sv.U * sigma * sv.V) / std::max(a.frobenius(), 1e-300);
            worst = std::max(worst, rel);
            if (rel > 1e-10) ok = false;

            // oracle: singular values of chi(A) via eigenvalues of chi* chi
            CMatrix chi = adjoint_complex(a);
            std::vector<Complex> ev = eigenvalues(chi.conj_transpose() * chi, 4000);
            std::vector<double> cs;
            for (const Complex& l : ev) cs.push_back(std::sqrt(std::max(0.0, l.real())));
            std::sort(cs.rbegin(), cs.rend());
            const double thr = 1e-8 * (1.0 + a.frobenius());
            for (size_t i = 0; ok && i < sv.sigma.size(); ++i)
                if (std::abs(cs[2 * i] - sv.sigma[i]) > thr ||
                    std::abs(cs[2 * i + 1] - sv.sigma[i]) > thr)
                    ok = false;
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) ++fails;
    }
    std::ostringstream extra;
    extra << "worst relative residual " << worst;
    return {10, "quaternion SVD reconstruction and adjoint doubling", fails == 0,
            count_detail(fails, trials, extra.str())};
}

} // namespace

std::vector<CriterionResult> run_acceptance(uint64_t seed) {
    std::vector<CriterionResult> out;
    SuiteState suite;
    int oracle_fails_suite1 = 0;
    int contradictions_suite2 = 0;
    std::vector<CanonicalResult> realizability_pool;

    out.push_back(criterion_canonical_invariance(seed + 1, suite, oracle_fails_suite1));
    out.push_back(criterion_canonical_separation(seed + 2, suite, contradictions_suite2));
    out.push_back(criterion_strengthened_schur(seed + 3));
    out.push_back(criterion_weyr_identity(seed + 4));
    out.push_back(criterion_special_forms(seed + 5));
    CriterionResult realizability = criterion_forest_realizability(seed + 7, suite, realizability_pool);
    out.push_back({6, "every produced graph is a forest", suite.forest_violations == 0,
                   std::to_string(suite.forest_checks) + " graphs checked, " +
                       std::to_string(suite.forest_violations) + " violations"});
    out.push_back(realizability);
    out.push_back(criterion_decomposition(seed + 8, realizability_pool));
    out.push_back(criterion_gadget(seed + 9));
    out.push_back(criterion_svd(seed + 10));
    out.push_back({11, "trace-word oracle never contradicts canonical equality",
                   oracle_fails_suite1 == 0 && contradictions_suite2 == 0,
                   "suite-1 oracle failures " + std::to_string(oracle_fails_suite1) +
                       ", suite-2 contradictions " + std::to_string(contradictions_suite2)});

    std::sort(out.begin(), out.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    return out;
}

std::string acceptance_to_json(const std::vector<CriterionResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CriterionResult& r : results)
        arr.push_back({{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    return arr.dump();
}

} // namespace qcf
