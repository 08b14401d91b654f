#include "qcf/qcf.h"

#include <cstring>
#include <new>
#include <string>

#include "acceptance.hpp"
#include "error.hpp"
#include "littlewood.hpp"
#include "schur.hpp"
#include "special.hpp"
#include "testkit.hpp"

using namespace qcf;

struct qcf_matrix {
    QMatrix m;
};

struct qcf_canonical {
    CanonicalResult result;
    qcf_matrix canon;
};

struct qcf_decomposition {
    Decomposition d;
    std::vector<qcf_matrix> blocks;
    std::vector<int> perm_one_based;
};

struct qcf_schur {
    SchurRealForm form;
    qcf_matrix u, f;
};

struct qcf_block_form {
    SpecialForm form;
    qcf_matrix u;
};

namespace {

thread_local std::string g_last_error;

qcf_status map_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::singular_input: return QCF_ERR_SINGULAR_INPUT;
    case ErrorCode::no_convergence: return QCF_ERR_NO_CONVERGENCE;
    case ErrorCode::not_an_eigenvalue: return QCF_ERR_NOT_AN_EIGENVALUE;
    case ErrorCode::bad_shape: return QCF_ERR_BAD_SHAPE;
    case ErrorCode::non_real_spectrum: return QCF_ERR_NON_REAL_SPECTRUM;
    case ErrorCode::not_idempotent: return QCF_ERR_NOT_IDEMPOTENT;
    case ErrorCode::not_square_zero: return QCF_ERR_NOT_SQUARE_ZERO;
    case ErrorCode::derogatory: return QCF_ERR_DEROGATORY;
    case ErrorCode::chain_failure: return QCF_ERR_CHAIN_FAILURE;
    case ErrorCode::order_violation: return QCF_ERR_ORDER_VIOLATION;
    case ErrorCode::shape_mismatch: return QCF_ERR_SHAPE_MISMATCH;
    case ErrorCode::not_block_diagonal: return QCF_ERR_NOT_BLOCK_DIAGONAL;
    case ErrorCode::parse: return QCF_ERR_PARSE;
    case ErrorCode::invalid_argument: return QCF_ERR_INVALID_ARGUMENT;
    case ErrorCode::internal: return QCF_ERR_INTERNAL;
    }
    return QCF_ERR_INTERNAL;
}

template <typename Fn>
qcf_status guarded(Fn&& fn) {
    try {
        fn();
        return QCF_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return QCF_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QCF_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Tolerance to_tolerance(const qcf_tolerance* tol) {
    if (!tol) return Tolerance{};
    return Tolerance{tol->eps_rank, tol->eps_eig, tol->eps_canon};
}

Quaternion to_quaternion(const double q[4]) { return {q[0], q[1], q[2], q[3]}; }

} // namespace

extern "C" {

qcf_tolerance qcf_default_tolerance(void) {
    Tolerance t;
    return {t.eps_rank, t.eps_eig, t.eps_canon};
}

const char* qcf_status_name(qcf_status status) {
    switch (status) {
    case QCF_OK: return "ok";
    case QCF_ERR_SINGULAR_INPUT: return "singular input";
    case QCF_ERR_NO_CONVERGENCE: return "no convergence";
    case QCF_ERR_NOT_AN_EIGENVALUE: return "not an eigenvalue";
    case QCF_ERR_BAD_SHAPE: return "bad shape";
    case QCF_ERR_NON_REAL_SPECTRUM: return "nonreal spectrum";
    case QCF_ERR_NOT_IDEMPOTENT: return "not idempotent";
    case QCF_ERR_NOT_SQUARE_ZERO: return "not square-zero";
    case QCF_ERR_DEROGATORY: return "derogatory";
    case QCF_ERR_CHAIN_FAILURE: return "chain failure";
    case QCF_ERR_ORDER_VIOLATION: return "order violation";
    case QCF_ERR_SHAPE_MISMATCH: return "shape mismatch";
    case QCF_ERR_NOT_BLOCK_DIAGONAL: return "not block diagonal";
    case QCF_ERR_PARSE: return "parse error";
    case QCF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QCF_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* qcf_last_error(void) { return g_last_error.c_str(); }

void qcf_string_free(char* text) { delete[] text; }

qcf_status qcf_matrix_create(int rows, int cols, const double* coeffs, qcf_matrix** out) {
    return guarded([&] {
        if (rows <= 0 || cols <= 0 || !out)
            throw Error(ErrorCode::invalid_argument, "matrix_create: bad dimensions");
        auto* m = new qcf_matrix{QMatrix(rows, cols)};
        if (coeffs)
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) {
                    const double* q = coeffs + 4 * (static_cast<size_t>(i) * cols + j);
                    m->m(i, j) = to_quaternion(q);
                }
        *out = m;
    });
}

qcf_status qcf_matrix_parse_json(const char* text, qcf_matrix** out) {
    return guarded([&] {
        if (!text || !out) throw Error(ErrorCode::invalid_argument, "parse_json: null argument");
        *out = new qcf_matrix{matrix_from_json(text)};
    });
}

char* qcf_matrix_to_json(const qcf_matrix* m) { return dup_string(matrix_to_json(m->m)); }

int qcf_matrix_rows(const qcf_matrix* m) { return m->m.rows(); }
int qcf_matrix_cols(const qcf_matrix* m) { return m->m.cols(); }

void qcf_matrix_entry(const qcf_matrix* m, int i, int j, double out[4]) {
    const Quaternion& q = m->m(i, j);
    out[0] = q.w;
    out[1] = q.x;
    out[2] = q.y;
    out[3] = q.z;
}

void qcf_matrix_free(qcf_matrix* m) { delete m; }

qcf_status qcf_canonical_form(const qcf_matrix* a, const qcf_tolerance* tol, qcf_canonical** out) {
    return guarded([&] {
        if (!a || !out) throw Error(ErrorCode::invalid_argument, "canonical_form: null argument");
        auto* c = new qcf_canonical{canonical_form(a->m, to_tolerance(tol)), {}};
        c->canon.m = c->result.canon;
        *out = c;
    });
}

const qcf_matrix* qcf_canonical_matrix(const qcf_canonical* c) { return &c->canon; }

int qcf_canonical_edge_count(const qcf_canonical* c) {
    return static_cast<int>(c->result.edges.size());
}

void qcf_canonical_edge(const qcf_canonical* c, int index, int* l, int* r) {
    const GraphEdge& e = c->result.edges[static_cast<size_t>(index)];
    if (l) *l = e.l + 1;
    if (r) *r = e.r + 1;
}

char* qcf_canonical_to_json(const qcf_canonical* c) {
    return dup_string(canonical_to_json(c->result));
}

void qcf_canonical_free(qcf_canonical* c) { delete c; }

qcf_status qcf_unitarily_similar(const qcf_matrix* a, const qcf_matrix* b,
                                 const qcf_tolerance* tol, int* similar) {
    return guarded([&] {
        if (!a || !b || !similar)
            throw Error(ErrorCode::invalid_argument, "unitarily_similar: null argument");
        *similar = unitarily_similar(a->m, b->m, to_tolerance(tol)) ? 1 : 0;
    });
}

qcf_status qcf_decompose(const qcf_canonical* c, const qcf_tolerance* tol,
                         qcf_decomposition** out) {
    return guarded([&] {
        if (!c || !out) throw Error(ErrorCode::invalid_argument, "decompose: null argument");
        auto* d = new qcf_decomposition{decompose(c->result, to_tolerance(tol)), {}, {}};
        for (const QMatrix& b : d->d.blocks) d->blocks.push_back({b});
        for (int v : d->d.permutation) d->perm_one_based.push_back(v + 1);
        *out = d;
    });
}

int qcf_decomposition_block_count(const qcf_decomposition* d) {
    return static_cast<int>(d->blocks.size());
}

const qcf_matrix* qcf_decomposition_block(const qcf_decomposition* d, int index) {
    return &d->blocks[static_cast<size_t>(index)];
}

const int* qcf_decomposition_permutation(const qcf_decomposition* d, int* length) {
    if (length) *length = static_cast<int>(d->perm_one_based.size());
    return d->perm_one_based.data();
}

char* qcf_decomposition_to_json(const qcf_decomposition* d) {
    return dup_string(decomposition_to_json(d->d));
}

void qcf_decomposition_free(qcf_decomposition* d) { delete d; }

qcf_status qcf_schur_real(const qcf_matrix* a, const qcf_tolerance* tol, qcf_schur** out) {
    return guarded([&] {
        if (!a || !out) throw Error(ErrorCode::invalid_argument, "schur_real: null argument");
        auto* s = new qcf_schur{strengthened_schur(a->m, to_tolerance(tol)), {}, {}};
        s->u.m = s->form.U;
        s->f.m = s->form.F;
        *out = s;
    });
}

const qcf_matrix* qcf_schur_unitary(const qcf_schur* s) { return &s->u; }
const qcf_matrix* qcf_schur_form(const qcf_schur* s) { return &s->f; }

int qcf_schur_block_count(const qcf_schur* s) { return static_cast<int>(s->form.sizes.size()); }

void qcf_schur_block(const qcf_schur* s, int index, double* lambda, int* size) {
    if (lambda) *lambda = s->form.lambdas[static_cast<size_t>(index)];
    if (size) *size = s->form.sizes[static_cast<size_t>(index)];
}

char* qcf_schur_to_json(const qcf_schur* s) { return dup_string(schur_to_json(s->form)); }

void qcf_schur_free(qcf_schur* s) { delete s; }

qcf_status qcf_projector_canonical(const qcf_matrix* a, const qcf_tolerance* tol,
                                   qcf_block_form** out) {
    return guarded([&] {
        if (!a || !out) throw Error(ErrorCode::invalid_argument, "projector_canonical: null argument");
        auto* f = new qcf_block_form{projector_canonical(a->m, to_tolerance(tol)), {}};
        f->u.m = f->form.U;
        *out = f;
    });
}

qcf_status qcf_square_zero_canonical(const qcf_matrix* a, const qcf_tolerance* tol,
                                     qcf_block_form** out) {
    return guarded([&] {
        if (!a || !out)
            throw Error(ErrorCode::invalid_argument, "square_zero_canonical: null argument");
        auto* f = new qcf_block_form{square_zero_canonical(a->m, to_tolerance(tol)), {}};
        f->u.m = f->form.U;
        *out = f;
    });
}

const qcf_matrix* qcf_block_form_unitary(const qcf_block_form* f) { return &f->u; }

int qcf_block_form_b_count(const qcf_block_form* f) {
    return static_cast<int>(f->form.summary.b_values.size());
}

double qcf_block_form_b_value(const qcf_block_form* f, int index) {
    return f->form.summary.b_values[static_cast<size_t>(index)];
}

int qcf_block_form_ones(const qcf_block_form* f) { return f->form.summary.ones; }
int qcf_block_form_zeros(const qcf_block_form* f) { return f->form.summary.zeros; }

qcf_status qcf_block_form_assemble(const qcf_block_form* f, qcf_matrix** out) {
    return guarded([&] {
        if (!f || !out) throw Error(ErrorCode::invalid_argument, "assemble: null argument");
        *out = new qcf_matrix{assemble_blocks(f->form.summary)};
    });
}

char* qcf_block_form_to_json(const qcf_block_form* f) {
    return dup_string(summary_to_json(f->form.summary));
}

void qcf_block_form_free(qcf_block_form* f) { delete f; }

qcf_status qcf_haar_unitary(int n, unsigned long long seed, qcf_matrix** out) {
    return guarded([&] {
        if (n <= 0 || !out) throw Error(ErrorCode::invalid_argument, "haar_unitary: bad arguments");
        SeededRng rng(seed);
        *out = new qcf_matrix{haar_unitary(n, rng)};
    });
}

qcf_status qcf_gadget_ma(const double a[4], qcf_matrix** out) {
    return guarded([&] {
        if (!a || !out) throw Error(ErrorCode::invalid_argument, "gadget_ma: null argument");
        *out = new qcf_matrix{gadget_ma(to_quaternion(a))};
    });
}

qcf_status qcf_gadget_m5(const qcf_matrix* a, const qcf_matrix* b, const qcf_matrix* c,
                         const qcf_matrix* d, qcf_matrix** out) {
    return guarded([&] {
        if (!a || !b || !c || !d || !out)
            throw Error(ErrorCode::invalid_argument, "gadget_m5: null argument");
        *out = new qcf_matrix{gadget_m5(a->m, b->m, c->m, d->m)};
    });
}

qcf_status qcf_gadget_wild(char kind, const qcf_matrix* m, const double lambda[4],
                           qcf_matrix** first, qcf_matrix** second) {
    return guarded([&] {
        if (!m || !first) throw Error(ErrorCode::invalid_argument, "gadget_wild: null argument");
        WildKind k;
        switch (kind) {
        case 'a': k = WildKind::a; break;
        case 'b': k = WildKind::b; break;
        case 'c': k = WildKind::c; break;
        case 'd': k = WildKind::d; break;
        default:
            throw Error(ErrorCode::invalid_argument, "gadget_wild: kind must be one of a, b, c, d");
        }
        Quaternion l = lambda ? to_quaternion(lambda) : Quaternion::i();
        GadgetPair pair = gadget_wild(k, m->m, l);
        *first = new qcf_matrix{pair.first};
        if (second) *second = pair.second ? new qcf_matrix{*pair.second} : nullptr;
    });
}

qcf_status qcf_trace_word_oracle(const qcf_matrix* a, const qcf_matrix* b, int max_len,
                                 int* agree) {
    return guarded([&] {
        if (!a || !b || !agree)
            throw Error(ErrorCode::invalid_argument, "trace_word_oracle: null argument");
        *agree = trace_word_oracle(a->m, b->m, max_len) ? 1 : 0;
    });
}

qcf_status qcf_selftest(unsigned long long seed, char** report_json, int* all_passed) {
    return guarded([&] {
        auto results = run_acceptance(seed);
        if (report_json) *report_json = dup_string(acceptance_to_json(results));
        if (all_passed) {
            int ok = 1;
            for (const auto& r : results)
                if (!r.passed) ok = 0;
            *all_passed = ok;
        }
    });
}

} // extern "C"
