#pragma once

#include "tglab/matrix.hpp"

#include <optional>
#include <vector>

namespace tglab {

// Reduced row echelon form over Q; pivot columns are appended to *pivots when given.
RatMatrix rref(RatMatrix a, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const RatMatrix& a);
std::size_t rank(const IntegerMatrix& a);

// Columns form a basis of the rational kernel.
RatMatrix nullspace(const RatMatrix& a);

std::optional<std::vector<Rat>> solve(const RatMatrix& a, const std::vector<Rat>& b);

RatMatrix inverse(const RatMatrix& a);
Rat det(const RatMatrix& a);
Int det(const IntegerMatrix& a);

IntegerMatrix to_integer(const RatMatrix& a);

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b);
Int dot(const std::vector<Int>& a, const std::vector<Int>& b);

}  // namespace tglab
