#pragma once

#include "tglab/matrix.hpp"

#include <functional>
#include <vector>

namespace tglab {

using RVec = std::vector<Rat>;
using IVec = std::vector<Int>;

RVec to_rvec(const IVec& v);
IVec primitive_int(const RVec& v);

// Calls fn on every k-subset of {0..n-1} in lexicographic order; fn returns false to stop.
void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn);

// Polyhedral cone with both descriptions kept in sync.
// Inequalities a read a.x >= 0, equations e read e.x = 0.
struct Cone {
    std::size_t ambient = 0;
    std::vector<RVec> rays;        // extreme rays of the pointed part, primitive
    std::vector<RVec> lineality;   // basis of the lineality space
    std::vector<RVec> equations;
    std::vector<RVec> inequalities;

    static Cone from_generators(std::size_t ambient, const std::vector<RVec>& gens);
    static Cone from_constraints(std::size_t ambient, const std::vector<RVec>& eqs, const std::vector<RVec>& ineqs);

    std::vector<RVec> generators() const;  // rays plus +/- lineality
    std::size_t dimension() const { return ambient - equations.size(); }
    bool contains(const RVec& v) const;
    bool in_relative_interior(const RVec& v) const;
    bool is_pointed() const { return lineality.empty(); }
    Cone intersect(const Cone& o) const;
    bool equals(const Cone& o) const;
};

struct Face {
    std::vector<std::size_t> points;  // indices of generator points on the face
    RVec normal;                      // normal.x >= offset on the polytope, equality on the face
    Rat offset = 0;
    std::size_t dim = 0;
    bool contains_origin = false;
};

class Polytope {
public:
    explicit Polytope(std::vector<IVec> points);
    // conv(0, b_1, ..., b_t); point 0 is the origin.
    static Polytope newton(const IntegerMatrix& b);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return cone_.dimension() - 1; }
    bool full_dimensional() const { return dim() == ambient_; }
    const std::vector<IVec>& points() const { return points_; }
    const std::vector<std::size_t>& vertices() const { return vertices_; }
    // Rows (h, n) with h + n.x >= 0.
    const std::vector<RVec>& facet_inequalities() const { return cone_.inequalities; }
    const std::vector<RVec>& affine_equations() const { return cone_.equations; }

    bool contains(const RVec& x) const;
    bool in_interior(const RVec& x) const;
    std::vector<Face> faces() const;
    Int normalized_volume(bool reversed_order = false) const;
    // Lattice points of scale * P.
    std::vector<IVec> lattice_points(long scale = 1) const;

private:
    std::size_t ambient_;
    std::vector<IVec> points_;
    std::vector<std::size_t> vertices_;
    Cone cone_;
    RVec origin_;
};

// Every integer point x with lo <= x <= hi componentwise.
void enumerate_box(const IVec& lo, const IVec& hi, const std::function<void(const IVec&)>& fn);

}  // namespace tglab
