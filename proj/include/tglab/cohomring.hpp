#pragma once

#include "tglab/matrix.hpp"
#include "tglab/toricfan.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tglab {

// Coordinates over the monomial basis of the ring.
using CohClass = std::vector<Rat>;

class CohomologyRing {
public:
    static CohomologyRing build(const Fan& f);

    std::size_t dim() const { return basis_.size(); }
    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    // Exponent vectors in D_0..D_{m-1}.
    const std::vector<std::vector<long>>& basis() const { return basis_; }
    const std::vector<long>& degrees() const { return degrees_; }
    const std::vector<std::vector<std::size_t>>& sr_monomials() const { return sr_; }

    CohClass zero() const;
    CohClass one() const;
    CohClass divisor(std::size_t i) const;
    CohClass divisor_combination(const std::vector<Int>& coeffs) const;
    CohClass monomial(const std::vector<long>& exps) const;

    CohClass add(const CohClass& a, const CohClass& b) const;
    CohClass scale(const CohClass& a, const Rat& s) const;
    CohClass multiply(const CohClass& a, const CohClass& b) const;
    CohClass power(const CohClass& a, long k) const;
    CohClass homogeneous_part(const CohClass& a, long k) const;
    std::optional<long> degree_of(const CohClass& a) const;
    bool is_zero(const CohClass& a) const;

    Rat integral(const CohClass& a) const;
    // Column b is a * T_b.
    RatMatrix multiplication_matrix(const CohClass& a) const;

    std::string str(const CohClass& a) const;

private:
    std::size_t n_ = 0, m_ = 0;
    std::vector<std::vector<long>> basis_;
    std::vector<long> degrees_;
    std::vector<std::vector<std::size_t>> sr_;
    std::map<std::vector<long>, CohClass> nf_;
    std::vector<std::vector<CohClass>> table_;
    Rat point_scale_;
};

struct ChernData {
    std::vector<CohClass> c1;
    CohClass c_top;
    CohClass euler_class;
};

ChernData chern_data(const CohomologyRing& ring, const IntegerMatrix& d);

Rat twisted_pairing(const CohomologyRing& ring, const CohClass& c_top, const CohClass& a, const CohClass& b);
RatMatrix twisted_pairing_matrix(const CohomologyRing& ring, const CohClass& c_top);

struct ReducedRing {
    RatMatrix kernel;                 // columns span ker(m_{c_top})
    std::vector<std::size_t> basis;   // indices of basis monomials spanning a complement
    RatMatrix projection;             // rank x dim
    RatMatrix pairing;                // induced pairing on the complement
    bool nondegenerate = false;
    bool kernel_is_ideal = false;
    std::size_t rank() const { return basis.size(); }
};

ReducedRing reduced_ring(const CohomologyRing& ring, const CohClass& c_top);

// Eigenvalue of mu on each basis element: deg - (n - c)/2, deg the complex degree.
std::vector<Rat> grading_mu(const CohomologyRing& ring, std::size_t c);

}  // namespace tglab
