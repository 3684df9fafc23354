#pragma once

#include "tglab/cohomring.hpp"
#include "tglab/weylops.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tglab {

// Element of H* tensor Q[z, 1/z], keyed by the power of z.
class LaurentClass {
public:
    LaurentClass() = default;
    LaurentClass(const CohomologyRing& ring, const CohClass& c, long zpow = 0);

    static LaurentClass zero(const CohomologyRing& ring);
    static LaurentClass one(const CohomologyRing& ring);

    const std::map<long, CohClass>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t dim() const { return dim_; }

    LaurentClass operator+(const LaurentClass& o) const;
    LaurentClass operator-(const LaurentClass& o) const;
    LaurentClass scaled(const Rat& s) const;
    LaurentClass shifted(long k) const;  // times z^k
    LaurentClass times(const CohomologyRing& ring, const LaurentClass& o) const;
    LaurentClass times(const CohomologyRing& ring, const CohClass& c) const;
    bool operator==(const LaurentClass& o) const { return t_ == o.t_; }

    // Total degree with deg z = deg D_i = 1, if homogeneous.
    std::optional<long> degree(const CohomologyRing& ring) const;

    std::string str(const CohomologyRing& ring) const;

private:
    void add(long k, const CohClass& c);
    std::size_t dim_ = 0;
    std::map<long, CohClass> t_;
};

struct QDMContext {
    CohomologyRing ring;
    QuantumSystem sys;
    ChernData chern;
    std::vector<CohClass> p;  // classes of the basis divisors
};

QDMContext make_qdm_context(const Fan& f, const IntegerMatrix& d);
QDMContext make_qdm_context(const Fan& f, const IntegerMatrix& d, const IntegerMatrix& basis_p);

using Degree = std::vector<long>;
using DegreeTable = std::map<Degree, LaurentClass>;

struct IFunctionTable {
    long d_max = 0;
    DegreeTable A;  // all d with 0 <= d_a <= d_max
};

// (D + k z)^{-1}, k != 0, by the nilpotent geometric series.
LaurentClass inverse_linear(const CohomologyRing& ring, const CohClass& d, long k);

LaurentClass i_coefficient(const QDMContext& ctx, const Degree& d);
IFunctionTable i_function(const QDMContext& ctx, long d_max);

// Degreewise action of an operator in q, z on a table; z q_a d_{q_a} acts on degree d as p_a + z d_a.
DegreeTable apply_operator(const QDMContext& ctx, const WeylOperator& op, const DegreeTable& in, long d_max);

struct AnnihilationRow {
    Degree degree;
    std::vector<Int> relation;
    bool b_is_zero = false;
    bool c_top_landing = false;
};

std::vector<AnnihilationRow> annihilation_check(const QDMContext& ctx, const std::vector<Int>& l,
                                                const IFunctionTable& table, long d_max);
bool annihilation_holds(const std::vector<AnnihilationRow>& rows);

bool quot_landing_check(const QDMContext& ctx, const WeylOperator& p, const IFunctionTable& table, long d_max);

// -<d, sum_i D_i - sum_j c1(L_j)> for degree d.
long expected_degree(const QDMContext& ctx, const Degree& d);
bool homogeneity_check(const QDMContext& ctx, const IFunctionTable& table, long d_max);

std::vector<Degree> degree_box(std::size_t r, long d_max);

}  // namespace tglab
