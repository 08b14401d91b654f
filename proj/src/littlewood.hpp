#pragma once

#include <optional>
#include <string>
#include <vector>

#include "factor.hpp"
#include "qmatrix.hpp"

namespace qcf {

enum class ScalarField { H, C, R };

/// Union-find over diagonal indices with +-1 edge exponents
/// (member = representative^exp) and one scalar field per class.
/// Encodes the admissible diagonal transformation group: s_i ranges over the
/// unitary elements of its class field, tied to its class representative.
class RelationTracker {
public:
    explicit RelationTracker(std::vector<ScalarField> fields);

    int size() const { return static_cast<int>(parent_.size()); }
    int find(int i);
    /// Exponent of i relative to its class representative.
    int exponent(int i);
    bool related(int l, int r) { return find(l) == find(r); }
    /// +1 when s_l = s_r, -1 when s_l = s_r^{-1}; only meaningful when related.
    int relative_exponent(int l, int r) { return exponent(l) * exponent(r); }
    ScalarField field(int i) { return field_[find(i)]; }
    /// Impose s_l = s_r^exp. The classes must be distinct; the merged field
    /// is the finer of the two. Fields only ever descend H -> C -> R.
    void merge(int l, int r, int exp);
    void restrict_field(int i, ScalarField f);
    /// All members of i's class with their exponents relative to i.
    std::vector<std::pair<int, int>> class_members(int i);

private:
    std::vector<int> parent_;
    std::vector<int> exp_; // sign relative to parent
    std::vector<ScalarField> field_;
};

struct TriangularForm {
    QMatrix U;                 // unitary
    QMatrix T;                 // upper triangular, strictly-lower entries exact zero
    std::vector<Complex> diag; // standard eigenvalues, succeq-descending
};

/// True iff every standard eigenvalue has geometric multiplicity 1: the
/// adjoint matrix kernel of chi(A) - lambda I has dimension 1 for nonreal
/// lambda and 2 for real lambda.
bool is_nonderogatory(const QMatrix& a, const Tolerance& tol);

/// Schur-type triangularization of a nonderogatory matrix with
/// succeq-descending standard diagonal; inside equal-eigenvalue runs the
/// first superdiagonal entry stays outside Cj (complex part nonzero).
/// Throws Error(derogatory) or Error(chain_failure).
TriangularForm triangularize(const QMatrix& a, const Tolerance& tol);

/// Fields for the group preserving the triangular form: C where Im > 0,
/// H where the eigenvalue is real.
RelationTracker initial_tracker(const std::vector<Complex>& diag);

/// True iff s_l^{-1} a s_r = a for every admissible scalar assignment.
bool is_fixed(const Quaternion& a, int l, int r, RelationTracker& tracker);

struct LogRow {
    int l, r;            // 0-based entry indices
    std::string case_id; // "fixed", "1a", "1b", "2a", "2b", "2c", "3a", "3b", "4", "5"
    std::string delta_r; // rendered relation increment, empty when fixed
    Quaternion value;    // canonical entry value
};

struct GraphEdge {
    int l, r; // 0-based
    int step; // position in the reduction order where the merge happened
};

struct CanonicalResult {
    QMatrix canon;
    std::vector<Complex> diag;
    std::vector<GraphEdge> edges;
    std::vector<LogRow> log;
};

/// Entry-by-entry reduction of an upper triangular form along the order
/// a_12, a_23, ..., a_{n-1,n}; a_13, ...; a_1n, threading the tracker.
class ReductionState {
public:
    ReductionState(QMatrix t, std::vector<Complex> diag, const Tolerance& tol);

    /// Reduce entry (l, r); entries must be visited in the fixed order or
    /// Error(order_violation) is thrown.
    void reduce_entry(int l, int r);

    bool done() const { return cursor_ >= static_cast<int>(order_.size()); }
    std::pair<int, int> next_entry() const { return order_[cursor_]; }
    void run_all();

    CanonicalResult result() const;
    const QMatrix& matrix() const { return t_; }
    RelationTracker& tracker() { return tracker_; }

private:
    void apply_diagonal(const std::vector<Quaternion>& s);
    /// Assign s_index = value and propagate through the class exponents.
    void fill_class(std::vector<Quaternion>& s, int index, const Quaternion& value);

    QMatrix t_;
    std::vector<Complex> diag_;
    Tolerance tol_;
    double snap_;
    RelationTracker tracker_;
    std::vector<std::pair<int, int>> order_;
    int cursor_{0};
    std::vector<GraphEdge> edges_;
    std::vector<LogRow> log_;
};

/// Littlewood canonical form A^infty of a nonderogatory matrix.
/// Re-running on the output reproduces it.
CanonicalResult canonical_form(const QMatrix& a, const Tolerance& tol);

/// Theorem-level decision: true iff the canonical forms agree entrywise
/// within eps_canon and the discrete reduction data coincide.
bool unitarily_similar(const QMatrix& a, const QMatrix& b, const Tolerance& tol);

/// Edges of Gamma(A): one per class merge recorded during reduction.
std::vector<std::pair<int, int>> graph(const CanonicalResult& result);

struct Decomposition {
    std::vector<int> permutation;
    std::vector<QMatrix> blocks;
};

/// Connected components of the graph, vertices sorted, components by least
/// vertex; the simultaneous permutation of canon is exactly block diagonal.
Decomposition decompose(const CanonicalResult& result, const Tolerance& tol);

std::string canonical_to_json(const CanonicalResult& result);
std::string decomposition_to_json(const Decomposition& d);

} // namespace qcf
