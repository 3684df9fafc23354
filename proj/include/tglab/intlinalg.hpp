#pragma once

#include "tglab/matrix.hpp"

#include <vector>

namespace tglab {

struct SmithDecomposition {
    IntegerMatrix U;
    IntegerMatrix D;
    IntegerMatrix V;
    std::size_t rank = 0;
};

struct RelationLattice {
    IntegerMatrix basis;  // columns span the integer kernel
    std::size_t size() const { return basis.cols(); }
    std::vector<Int> relation(std::size_t k) const { return basis.col(k); }
};

struct SectionSystem {
    IntegerMatrix C;
    IntegerMatrix L;
    IntegerMatrix M;
    IntegerMatrix Dmat;
};

// U * A * V = D with U, V unimodular and D in Smith form.
SmithDecomposition smith_normal_form(const IntegerMatrix& a);

RelationLattice kernel_lattice(const IntegerMatrix& b);

// Requires the columns of b to generate Z^s.
SectionSystem section_system(const IntegerMatrix& b);

// Same, but with L fixed to the given kernel basis.
SectionSystem section_system_with_kernel(const IntegerMatrix& b, const IntegerMatrix& kernel);

bool section_identities_hold(const IntegerMatrix& b, const SectionSystem& s);

// Relation of A' from a relation of A: l_{m+j} = -sum_i l_i d_{ji}.
std::vector<Int> extend_relation(const IntegerMatrix& a, const std::vector<Int>& l, const IntegerMatrix& d);

// Prepends the row of ones and the column e_0.
IntegerMatrix homogenize(const IntegerMatrix& b);

// A' = [[A, 0], [d, I_c]].
IntegerMatrix total_matrix(const IntegerMatrix& a, const IntegerMatrix& d);

}  // namespace tglab
