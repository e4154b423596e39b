#pragma once

#include "chevalley/rational.hpp"

#include <optional>

namespace chev {

// Exact linear algebra over Q and Z.  Matrices are lists of row vectors.

// Row Hermite normal form: rows of the result span the same lattice as the
// input rows, are in echelon form with positive pivots and reduced entries
// above each pivot.  Zero rows are dropped.
ZMat hnf(ZMat rows);

// HNF for rational row vectors (clears denominators, then divides back).
QMat lattice_basis(const QMat& rows);

// Same lattice?  Decided by comparing HNFs.
bool same_lattice(const QMat& a, const QMat& b);

// Coefficients c with sum c_i basis_i = v, if v lies in the Q-span.  basis
// rows must be linearly independent.
std::optional<QVec> solve_in_span(const QMat& basis, const QVec& v);

// Reduced row echelon form over Q; returns the rank.
int rref(QMat& m, std::vector<int>* pivots = nullptr);
int rank(QMat m);

// Z-basis of {x in Z^n : a.x = 0}, canonical (HNF rows).
ZMat integer_kernel(const ZVec& a, int n);

Z gcd_all(const ZVec& v);
Z lcm_denominators(const QVec& v);

}  // namespace chev
