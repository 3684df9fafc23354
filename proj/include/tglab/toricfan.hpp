#pragma once

#include "tglab/polyhedral.hpp"

#include <optional>
#include <vector>

namespace tglab {

// Ray indices are 0-based.
struct Fan {
    std::size_t dim = 0;
    std::vector<IVec> rays;
    std::vector<std::vector<std::size_t>> max_cones;

    IntegerMatrix ray_matrix() const;  // columns are the rays
};

struct FanDiagnostics {
    bool smooth = false;
    bool complete = false;
    bool simplicial = false;
};

FanDiagnostics validate_fan(const Fan& f);

// Sigma' for the split bundle with divisor rows d (c x m).
Fan total_space_fan(const Fan& f, const IntegerMatrix& d, bool allow_negative = false);

struct Convexity {
    bool convex = false;
    bool strictly = false;
};

// psi gives one value per ray; convex means psi <= psi_sigma on every ray for every max cone.
Convexity pl_is_convex(const Fan& f, const RVec& psi, bool allow_incomplete = false);

// A divisor sum_i d_i D_i is nef iff -d is convex.
bool divisor_is_nef(const Fan& f, const IVec& d, bool allow_incomplete = false);

// Rows of the kernel basis L are the classes of the D_i in L^dual.
std::vector<RVec> divisor_classes(const IntegerMatrix& kernel);

Cone nef_cone_anticones(const Fan& f, const IntegerMatrix& kernel, bool allow_incomplete = false);
Cone nef_cone_anticones(const Fan& f);
// Image of the cone of convex PL functions under d -> sum d_i Dbar_i.
Cone nef_cone_pl(const Fan& f, const IntegerMatrix& kernel, bool allow_incomplete = false);
Cone nef_cone_pl(const Fan& f);

bool nef_cone_pullback_check(const Fan& f, const IntegerMatrix& d);

struct AnticanonicalConsistency {
    bool total_space_nef = false;  // -K of Sigma' nef
    bool base_condition = false;   // -K - sum c1(L_j) nef on Sigma
    bool consistent() const { return total_space_nef == base_condition; }
};
AnticanonicalConsistency anticanonical_consistency(const Fan& f, const IntegerMatrix& d);

bool conv_in_support_check(const Fan& f, const IntegerMatrix& d);

struct WSetReport {
    bool convex = false;
    Int hull_volume = 0;
    std::size_t pieces = 0;
    bool vertices_covered = false;
};
WSetReport w_set_report(const Fan& f, const IntegerMatrix& d, bool allow_negative = false);
bool w_set_convexity(const Fan& f, const IntegerMatrix& d, bool allow_negative = false);

// Coordinates of v in the basis given by the rays of a simplicial cone, if v is in its span.
std::optional<RVec> cone_coordinates(const Fan& f, std::size_t cone, const RVec& v);
bool in_support(const Fan& f, const RVec& v);

}  // namespace tglab
