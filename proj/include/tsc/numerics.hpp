#pragma once

#include <cstddef>
#include <vector>

namespace tsc::numerics {

// Eigenvalues of a symmetric n x n matrix (row-major), descending order.
// Cyclic Jacobi rotations; fine for the small K x K Gram matrices we feed it.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, size_t n);

// Singular values of a k x v row-major matrix, descending: sqrt of the
// eigenvalues of A * A^T. Requires k <= v.
std::vector<double> singular_values_gram(const std::vector<double>& a, size_t k, size_t v);

}  // namespace tsc::numerics
