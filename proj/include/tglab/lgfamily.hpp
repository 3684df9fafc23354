#pragma once

#include "tglab/polyhedral.hpp"
#include "tglab/weylops.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tglab {

using LaurentPoly = std::map<IVec, Rat>;

std::string laurent_str(const LaurentPoly& p, const std::string& var = "y");

// f = -sum_i lambda_i y^{b_i}, columns b_i of B.
struct LaurentFamily {
    IntegerMatrix B;
    std::size_t s() const { return B.rows(); }
    std::size_t t() const { return B.cols(); }
    LaurentPoly evaluate(const std::vector<Rat>& lambda) const;
    std::string str() const;
};

LaurentFamily build_family(const IntegerMatrix& b);

// lambda_i(q) = (-1)^{eps_i} q^{M e_i}, eps_i = 1 for the bundle columns i >= m.
struct KMRestriction {
    IntegerMatrix M;
    std::vector<int> eps;
};

KMRestriction km_restriction(const IntegerMatrix& M, std::size_t m);

struct KMTerm {
    int sign = 1;  // sign of the monomial in f
    IVec q;
    IVec y;
};

struct KMFamily {
    std::vector<KMTerm> terms;
    std::string str() const;
};

KMFamily restrict_to_km(const LaurentFamily& fam, const KMRestriction& k);
std::vector<Rat> km_parameters(const KMRestriction& k, const std::vector<Rat>& q);
// Compares each lambda_i(q) with the image of lambda_i under the theta change and i_theta.
bool km_matches_theta(const QuantumSystem& s);

struct JacobianOptions {
    long window = 2;  // plateau length in whole weight units
    long cutoff = 0;  // largest weight; 0 selects 4 (s + 1)
};

struct JacobianSlice {
    Rat weight;
    std::size_t monomials = 0;
    std::size_t rank = 0;
    std::size_t dim = 0;
};

struct JacobianData {
    bool stabilized = false;
    std::size_t dim = 0;
    Int volume = 0;
    long denominator = 1;  // weights lie in (1/denominator) Z
    std::vector<JacobianSlice> slices;
    std::vector<IVec> staircase;  // monomials spanning the quotient
};

// Quotient of Q[NB] by the y_k d f / d y_k, filtered by the Newton weight of conv(0, B).
JacobianData jacobian_quotient(const IntegerMatrix& b, const std::vector<Rat>& lambda, const JacobianOptions& opt = {});
std::size_t jacobian_quotient_dim(const IntegerMatrix& b, const std::vector<Rat>& lambda,
                                  const JacobianOptions& opt = {});

// g = sum_{b_i in face} lambda_i y^{b_i} and y_k d g / d y_k. When the face contains the origin the constant
// lambda_0 is free, so the first equation only fixes lambda_0 = -g.
struct FaceSystem {
    std::vector<std::size_t> columns;
    bool contains_origin = false;
    std::vector<LaurentPoly> equations;
};

FaceSystem face_critical_system(const IntegerMatrix& b, const Face& face, const std::vector<Rat>& lambda);

struct TorusWitness {
    std::vector<std::size_t> columns;
    bool contains_origin = false;
    long prime = 0;
    std::vector<long> point;
    std::optional<long> lambda0;
};

// First point of (F_p^*)^s solving the system, if any; nullopt also when lambda has p in a denominator.
std::optional<TorusWitness> torus_witness(const IntegerMatrix& b, const FaceSystem& sys, long p);

enum class Verdict { Good, NonTameSuspected, BadSuspected };
std::string verdict_name(Verdict v);

struct Classification {
    Verdict verdict = Verdict::Good;
    JacobianData jacobian;
    std::vector<TorusWitness> bad_witnesses;      // proper faces without the origin
    std::vector<TorusWitness> non_tame_witnesses;  // proper faces through the origin
    std::vector<std::string> evidence;
};

Classification classify_parameter(const IntegerMatrix& b, const std::vector<Rat>& lambda,
                                  const JacobianOptions& opt = {}, const std::vector<long>& primes = {101, 103});

}  // namespace tglab
