#pragma once

#include "ism/types.hpp"

namespace ism {

/// H = I - (1/n) 1 1^T. Projects out the mean; H 1 = 0 and H^2 = H.
SymmetricMatrix centering_matrix(Index n);

/// Diagonal matrix of row sums of M.
Matrix degree_matrix(const SymmetricMatrix& m);
Vector degree_vector(const SymmetricMatrix& m);

struct EigResult {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // column i pairs with eigenvalues[i]
};

/// Full symmetric eigendecomposition, eigenvalues ascending, each eigenvector
/// sign-fixed so its largest-magnitude entry is positive. Deterministic:
/// identical input bits give identical output bits.
EigResult sorted_symmetric_eig(const SymmetricMatrix& m);

/// Double-center a square matrix: H M H without forming H.
Matrix double_center(const Matrix& m);

/// Thin QR orthonormalization with the R-diagonal sign fixed positive, so the
/// result is a deterministic function of the input.
Matrix orthonormal_columns(const Matrix& m);

}  // namespace ism
