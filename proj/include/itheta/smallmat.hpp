#pragma once

// Small dense matrix kernels shared by the geometry and lattice layers.
// Matrices are row-major std::vector<double> of size n*n; n stays <= 12
// at desk scale, so everything here is plain O(n^3) with no blocking.

#include <vector>

namespace itheta {

// Determinant by LU with partial pivoting.  Destroys nothing (copies).
double det_dense(int n, const std::vector<double>& a);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> sym_eigenvalues(int n, const std::vector<double>& a);

// Full symmetric eigen-decomposition: a = V diag(w) V^T with V's columns
// the eigenvectors (V[i*n+j] = component i of eigenvector j), w ascending.
void sym_eigen(int n, const std::vector<double>& a, std::vector<double>& w,
               std::vector<double>& V);

// Cholesky a = L L^T (L lower).  Returns false if a is not positive
// definite to working precision.
bool cholesky(int n, const std::vector<double>& a, std::vector<double>& L);

// Solve a x = b for small dense a via the LU of det_dense; returns false
// when a is numerically singular.
bool solve_dense(int n, std::vector<double> a, std::vector<double> b,
                 std::vector<double>& x);

}  // namespace itheta
