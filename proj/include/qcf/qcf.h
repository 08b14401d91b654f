/* qcf: canonical forms of quaternion matrices under unitary similarity.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed here; every fallible call returns a qcf_status, with a
 * human-readable detail available from qcf_last_error() on failure.
 *
 * Quaternions cross the boundary as double[4] = {w, x, y, z} meaning
 * w + x i + y j + z k. Matrix JSON is
 *   {"rows": m, "cols": n, "entries": [[[w,x,y,z], ...], ...]}  (row-major).
 * Indices in results are 1-based, matching the JSON reports.
 */
#ifndef QCF_H
#define QCF_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcf_status {
    QCF_OK = 0,
    QCF_ERR_SINGULAR_INPUT,
    QCF_ERR_NO_CONVERGENCE,
    QCF_ERR_NOT_AN_EIGENVALUE,
    QCF_ERR_BAD_SHAPE,
    QCF_ERR_NON_REAL_SPECTRUM,
    QCF_ERR_NOT_IDEMPOTENT,
    QCF_ERR_NOT_SQUARE_ZERO,
    QCF_ERR_DEROGATORY,
    QCF_ERR_CHAIN_FAILURE,
    QCF_ERR_ORDER_VIOLATION,
    QCF_ERR_SHAPE_MISMATCH,
    QCF_ERR_NOT_BLOCK_DIAGONAL,
    QCF_ERR_PARSE,
    QCF_ERR_INVALID_ARGUMENT,
    QCF_ERR_INTERNAL
} qcf_status;

typedef struct qcf_tolerance {
    double eps_rank;
    double eps_eig;
    double eps_canon;
} qcf_tolerance;

/* Defaults: eps_rank 1e-9, eps_eig 1e-8, eps_canon 1e-8. */
qcf_tolerance qcf_default_tolerance(void);

const char* qcf_status_name(qcf_status status);
/* Detail message of the most recent failure on this thread. */
const char* qcf_last_error(void);

void qcf_string_free(char* text);

/* ---- matrices ---- */

typedef struct qcf_matrix qcf_matrix;

/* coeffs: rows*cols*4 doubles, row-major, wxyz per entry; NULL for zeros. */
qcf_status qcf_matrix_create(int rows, int cols, const double* coeffs, qcf_matrix** out);
qcf_status qcf_matrix_parse_json(const char* text, qcf_matrix** out);
char* qcf_matrix_to_json(const qcf_matrix* m);
int qcf_matrix_rows(const qcf_matrix* m);
int qcf_matrix_cols(const qcf_matrix* m);
void qcf_matrix_entry(const qcf_matrix* m, int i, int j, double out[4]);
void qcf_matrix_free(qcf_matrix* m);

/* ---- Littlewood canonical form (nonderogatory matrices) ---- */

typedef struct qcf_canonical qcf_canonical;

qcf_status qcf_canonical_form(const qcf_matrix* a, const qcf_tolerance* tol, qcf_canonical** out);
const qcf_matrix* qcf_canonical_matrix(const qcf_canonical* c);
int qcf_canonical_edge_count(const qcf_canonical* c);
void qcf_canonical_edge(const qcf_canonical* c, int index, int* l, int* r); /* 1-based */
char* qcf_canonical_to_json(const qcf_canonical* c);
void qcf_canonical_free(qcf_canonical* c);

qcf_status qcf_unitarily_similar(const qcf_matrix* a, const qcf_matrix* b,
                                 const qcf_tolerance* tol, int* similar);

typedef struct qcf_decomposition qcf_decomposition;

qcf_status qcf_decompose(const qcf_canonical* c, const qcf_tolerance* tol,
                         qcf_decomposition** out);
int qcf_decomposition_block_count(const qcf_decomposition* d);
const qcf_matrix* qcf_decomposition_block(const qcf_decomposition* d, int index);
/* 1-based old indices in their new order; length equals the matrix size. */
const int* qcf_decomposition_permutation(const qcf_decomposition* d, int* length);
char* qcf_decomposition_to_json(const qcf_decomposition* d);
void qcf_decomposition_free(qcf_decomposition* d);

/* ---- strengthened Schur form (real spectrum) ---- */

typedef struct qcf_schur qcf_schur;

qcf_status qcf_schur_real(const qcf_matrix* a, const qcf_tolerance* tol, qcf_schur** out);
const qcf_matrix* qcf_schur_unitary(const qcf_schur* s);
const qcf_matrix* qcf_schur_form(const qcf_schur* s);
int qcf_schur_block_count(const qcf_schur* s);
void qcf_schur_block(const qcf_schur* s, int index, double* lambda, int* size);
char* qcf_schur_to_json(const qcf_schur* s);
void qcf_schur_free(qcf_schur* s);

/* ---- idempotent / square-zero canonical forms ---- */

typedef struct qcf_block_form qcf_block_form;

qcf_status qcf_projector_canonical(const qcf_matrix* a, const qcf_tolerance* tol,
                                   qcf_block_form** out);
qcf_status qcf_square_zero_canonical(const qcf_matrix* a, const qcf_tolerance* tol,
                                     qcf_block_form** out);
const qcf_matrix* qcf_block_form_unitary(const qcf_block_form* f);
int qcf_block_form_b_count(const qcf_block_form* f);
double qcf_block_form_b_value(const qcf_block_form* f, int index);
int qcf_block_form_ones(const qcf_block_form* f);
int qcf_block_form_zeros(const qcf_block_form* f);
qcf_status qcf_block_form_assemble(const qcf_block_form* f, qcf_matrix** out);
char* qcf_block_form_to_json(const qcf_block_form* f);
void qcf_block_form_free(qcf_block_form* f);

/* ---- fixtures and checks ---- */

qcf_status qcf_haar_unitary(int n, unsigned long long seed, qcf_matrix** out);
qcf_status qcf_gadget_ma(const double a[4], qcf_matrix** out);
qcf_status qcf_gadget_m5(const qcf_matrix* a, const qcf_matrix* b, const qcf_matrix* c,
                         const qcf_matrix* d, qcf_matrix** out);
/* kind in {'a','b','c','d'}; lambda NULL defaults to i; *second stays NULL
 * for kinds a and b. */
qcf_status qcf_gadget_wild(char kind, const qcf_matrix* m, const double lambda[4],
                           qcf_matrix** first, qcf_matrix** second);
qcf_status qcf_trace_word_oracle(const qcf_matrix* a, const qcf_matrix* b, int max_len,
                                 int* agree);

/* Run the acceptance criteria; report is a JSON array with one object per
 * criterion. all_passed is set to 1 when every criterion passed. */
qcf_status qcf_selftest(unsigned long long seed, char** report_json, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* QCF_H */
