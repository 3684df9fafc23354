#pragma once

#include "tglab/polyhedral.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace tglab {

std::vector<Face> faces(const Polytope& q);
Int normalized_volume(const Polytope& q, bool reversed_order = false);

struct AffineSemigroup {
    IntegerMatrix generators;                                // columns
    std::optional<IVec> grading;                             // row functional, positive on generators
    std::vector<std::vector<std::size_t>> unimodular_cones;  // optional cover of the cone by unimodular cones
};

// Memoized membership oracle for one semigroup.
class SemigroupMembership {
public:
    explicit SemigroupMembership(const AffineSemigroup& s);
    bool contains(const IVec& v);
    bool in_cone(const IVec& v) const { return cone_.contains(to_rvec(v)); }
    const Cone& cone() const { return cone_; }
    // Grading used for the search; empty if none is available.
    const std::optional<IVec>& grading() const { return grading_; }

private:
    bool search(const IVec& v);
    AffineSemigroup s_;
    Cone cone_;
    std::optional<IVec> grading_;
    std::vector<IVec> gens_;
    std::map<IVec, bool> memo_;
};

bool semigroup_contains(const AffineSemigroup& s, const IVec& v);

// Lattice points of the cone with grading <= bound, sorted by grading then lexicographically.
std::vector<IVec> graded_cone_points(const Cone& cone, const IVec& grading, long bound);

struct SaturationResult {
    bool saturated_up_to_D = true;
    std::optional<IVec> witness;
    std::size_t points_checked = 0;
};
SaturationResult saturation_check(const AffineSemigroup& s, long degree_bound);

struct ShiftResult {
    bool holds = false;
    IVec shift;
    long shift_degree = 0;
    std::size_t interior_points = 0;
    std::size_t shifted_points = 0;
};
// s = A'' with grading row 0; the shift is a''_0 + sum of the last c columns.
ShiftResult gorenstein_shift_check(const IntegerMatrix& a2, std::size_t c, long degree_bound);

// s = A' with max cones of Sigma' as the unimodular cover; points with max-norm <= bound.
ShiftResult interior_Aprime_check(const IntegerMatrix& a1, std::size_t c,
                                  const std::vector<std::vector<std::size_t>>& cones, long bound);

struct Binomial {
    IVec plus;
    IVec minus;
};
// Generators of the toric ideal of B, with the homogenizing variable at index 0 unless
// the first row of B is already all ones.
std::vector<Binomial> toric_ideal_binomials(const IntegerMatrix& b, long degree_bound);

}  // namespace tglab
