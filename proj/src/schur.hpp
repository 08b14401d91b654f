#pragma once

#include <vector>

#include "factor.hpp"
#include "qmatrix.hpp"

namespace qcf {

/// Decreasingly ordered list of positive integers.
using Partition = std::vector<int>;

/// Conjugate partition: r_i = #{j : m_j >= i}, length m_1. Involutive.
Partition conjugate_partition(const Partition& m);

/// Weyr characteristic of a real eigenvalue: r_l = rank((A - lambda I)^{l-1})
/// - rank((A - lambda I)^l) until the kernel stabilizes.
/// Throws Error(not_an_eigenvalue) when A - lambda I has full rank.
Partition weyr_characteristic(const QMatrix& a, double lambda, const Tolerance& tol);

/// Modified Jordan matrix: diagonal blocks lambda_t I_{r_i} with [I; 0]
/// superdiagonal couplings inside each eigenvalue, zero elsewhere.
/// Throws Error(bad_shape) on a non-decreasing Weyr list or a multiplicity
/// mismatch.
QMatrix modified_jordan(const EigenList& eigs, const std::vector<Partition>& weyrs);

struct SchurRealForm {
    QMatrix U;                  // unitary
    QMatrix F;                  // block upper triangular, diagonal lambda_i I
    std::vector<double> lambdas; // one per block, descending
    std::vector<int> sizes;      // block sizes n_i
};

/// Strengthened Schur form for a matrix with real spectrum: U* A U = F with
/// diagonal blocks lambda_i I and, inside equal-eigenvalue runs, upper
/// triangular F_{i,i+1} with positive real diagonal.
/// Throws Error(non_real_spectrum) when an eigenvalue has nonreal part.
SchurRealForm strengthened_schur(const QMatrix& a, const Tolerance& tol);

/// Test oracle for the uniqueness statement: true iff V* F V still has the
/// block shape with the same diagonal blocks and V is block diagonal with
/// the form's block sizes.
bool verify_block_diag_stabilizer(const SchurRealForm& form, const QMatrix& v,
                                  const Tolerance& tol);

std::string schur_to_json(const SchurRealForm& form);

} // namespace qcf
