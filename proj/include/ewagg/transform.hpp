#pragma once

#include "ewagg/types.hpp"

namespace ewagg {

/// Basis in which a diagonal filter acts.
enum class Basis { Identity, Dct };

/// theta = D v with D the DCT-II matrix scaled so that D D^T = I/n.
/// theta_1 of a constant vector equals the constant, and
/// ||theta||_2^2 = ||v||_n^2.
Vector dct_forward(const Vector& v);

/// Exact inverse of dct_forward: v = n D^T theta.
Vector dct_inverse(const Vector& theta);

// Orthonormal coordinates c = Q v (Q = sqrt(n) D for Dct, Q = I for
// Identity). Filters and risk computations work in these coordinates.
Vector analyze(Basis basis, const Vector& v);
Vector synthesize(Basis basis, const Vector& c);

/// Dense orthonormal Q with rows indexed by frequency. O(n^2) memory;
/// meant for cross-checks and small dense fallbacks.
Matrix basis_matrix(Basis basis, Index n);

}  // namespace ewagg
