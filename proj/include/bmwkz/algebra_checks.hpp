// Checks on a finite-dimensional algebra presented by structure constants:
// semisimplicity via the rank of the trace form of the left regular
// representation, associativity on sampled triples, and consistency with a
// matrix realization of the basis words.
#pragma once

#include <cstdint>
#include <string>

#include "bmwkz/dihedral_algebra.hpp"

namespace bmwkz {

using StructureTensor = std::vector<std::vector<Element>>;

void element_axpy(Element& acc, const Element& x, cplx c);
double element_norm(const Element& x);  // Euclidean norm of the coefficients

Element tensor_multiply(const StructureTensor& t, const Element& a,
                        const Element& b);

// Dense matrix of left multiplication by basis element a.
MatrixXcd left_multiplication(const StructureTensor& t, int a);

// G_ab = Tr(L_a L_b), the trace form of the left regular representation.
MatrixXcd gram_matrix(const StructureTensor& t);

// Number of singular values above rel_tol * (largest singular value).
int rank_by_svd(const MatrixXcd& m, double rel_tol = 1e-6);

// max over `trials` seeded random triples (a, b, c) of
// || (e_a e_b) e_c - e_a (e_b e_c) || in coefficient norm.
double associativity_residual(const StructureTensor& t, int trials,
                              std::uint64_t seed);

// max over basis pairs of || M(a) M(b) - sum_c t[a][b][c] M(c) ||_F where
// M(w) evaluates the word in the monodromy representation.
double representation_residual(const std::vector<Word>& basis,
                               const StructureTensor& t,
                               const PhiOracle& oracle);

// Deterministic JSON with the basis word keys and all nonzero structure
// constants as [a, b, c, re, im] rows.
std::string tensor_to_json(const std::vector<Word>& basis,
                           const StructureTensor& t);

}  // namespace bmwkz
