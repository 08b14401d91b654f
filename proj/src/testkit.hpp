#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "factor.hpp"
#include "qmatrix.hpp"
#include "schur.hpp"
#include "special.hpp"

namespace qcf {

/// Reproducible stream: mt19937_64 with a Box-Muller normal transform, so the
/// sample sequence depends only on the seed.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : gen_(seed) {}

    double uniform(); // [0, 1)
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi); // inclusive
    double normal();
    Quaternion normal_quaternion();

private:
    std::mt19937_64 gen_;
    bool have_spare_{false};
    double spare_{0.0};
};

/// Unitary from Gram-Schmidt QR of a matrix with standard-normal quaternion
/// coefficients.
QMatrix haar_unitary(int n, SeededRng& rng);

/// [[3, 1, a], [0, 2, 1], [0, 0, 1]]: unitarily similar gadgets iff the
/// entries are similar quaternions.
QMatrix gadget_ma(const Quaternion& a);

/// The 5n x 5n system gadget with diagonal 5I, 4I, 3I, 2I, I.
QMatrix gadget_m5(const QMatrix& a, const QMatrix& b, const QMatrix& c, const QMatrix& d);

enum class WildKind { a, b, c, d };

struct GadgetPair {
    QMatrix first;
    std::optional<QMatrix> second; // present for kinds c and d
};

/// The wildness constructions: (a) the J2(lambda) class embedding,
/// (b) cube-zero, (c) idempotent pairs, (d) mutually annihilating pairs.
GadgetPair gadget_wild(WildKind kind, const QMatrix& m,
                       const Quaternion& lambda = Quaternion::i());

/// Necessary condition for unitary similarity: Re tr w(A, A*) agrees with
/// Re tr w(B, B*) for every word w of length <= max_len (deduplicated by
/// cyclic equivalence). Never sufficient.
bool trace_word_oracle(const QMatrix& a, const QMatrix& b, int max_len);

// ---- planted random instances ----

struct PlantedNonderogatory {
    QMatrix a;                 // dense, Haar-conjugated
    QMatrix t;                 // the planted triangular representative
    std::vector<Complex> diag; // planted standard eigenvalues
};

/// Random nonderogatory matrix with a mix of real and nonreal eigenvalues,
/// pairwise separation at least 0.4, equal-run couplings kept outside Cj.
PlantedNonderogatory random_nonderogatory(int n, SeededRng& rng);

struct PlantedRealSpectrum {
    QMatrix a;
    std::vector<double> lambdas; // per block, descending
    std::vector<int> sizes;      // block sizes of the planted modified Jordan form
};

/// S B S^{-1} with planted modified Jordan B and condition-bounded S.
PlantedRealSpectrum random_real_spectrum(int n, SeededRng& rng);

/// Haar-conjugated canonical projector (resp. square-zero matrix) with the
/// planted block census returned alongside.
std::pair<QMatrix, BlockSummary> random_projector(int n, SeededRng& rng);
std::pair<QMatrix, BlockSummary> random_square_zero(int n, SeededRng& rng);

/// Non-orthogonal projector S (I_r + 0) S^{-1} with condition-bounded S.
QMatrix skew_projector(int n, int r, SeededRng& rng);

/// Random decreasing list summing to n.
Partition random_partition(int n, SeededRng& rng);

/// Random forest on vertices 0..n-1 as an edge list (l < r).
std::vector<std::pair<int, int>> random_forest(int n, SeededRng& rng);

/// The realizability witness: diagonal (n-l)i, entry 1 on forest edges.
QMatrix forest_witness(int n, const std::vector<std::pair<int, int>>& edges);

} // namespace qcf
