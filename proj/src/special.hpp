#pragma once

#include <string>
#include <vector>

#include "qmatrix.hpp"

namespace qcf {

enum class BlockKind { idempotent, square_zero };

/// Census of the canonical direct sum: 2x2 blocks [[d, b],[0, 0]] with d = 1
/// (idempotent) or 0 (square-zero), then [1] blocks, then [0] blocks.
struct BlockSummary {
    BlockKind kind{BlockKind::idempotent};
    std::vector<double> b_values; // strictly positive, descending
    int ones{0};
    int zeros{0};
};

struct SpecialForm {
    QMatrix U; // unitary with U* A U = assemble_blocks(summary) up to tolerance
    BlockSummary summary;
};

/// Canonical form of an idempotent matrix (A^2 = A) under unitary similarity.
/// Throws Error(not_idempotent) when ||A^2 - A|| > eps_canon * (1 + ||A||^2).
SpecialForm projector_canonical(const QMatrix& a, const Tolerance& tol);

/// Canonical form of a square-zero matrix (A^2 = 0) under unitary similarity.
/// Throws Error(not_square_zero) when ||A^2|| > eps_canon * ||A||^2.
SpecialForm square_zero_canonical(const QMatrix& a, const Tolerance& tol);

/// The explicit canonical representative, a pure function of the summary.
QMatrix assemble_blocks(const BlockSummary& summary);

std::string summary_to_json(const BlockSummary& summary);

} // namespace qcf
