#pragma once

#include "tglab/arith.hpp"
#include "tglab/matrix.hpp"
#include "tglab/toricfan.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tglab {

// z^z lambda^lambda (z^2 d_z)^theta d^partial, in this order.
struct Monomial {
    long z = 0;
    long theta = 0;
    std::vector<long> lambda;
    std::vector<long> partial;

    bool operator==(const Monomial& o) const {
        return z == o.z && theta == o.theta && lambda == o.lambda && partial == o.partial;
    }
};

// Strict monomial order: degrevlex on (partial, theta), then lex on lambda, then z.
bool monomial_less(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return monomial_less(a, b); }
};

struct Term {
    Rat coeff;
    Monomial mono;
};

class WeylOperator {
public:
    explicit WeylOperator(std::size_t nvars = 0, std::vector<bool> invertible = {});

    static WeylOperator constant(std::size_t nvars, const Rat& c);
    static WeylOperator lambda(std::size_t nvars, std::size_t i, long e = 1);
    static WeylOperator partial(std::size_t nvars, std::size_t i, long k = 1);
    static WeylOperator z(std::size_t nvars, long e = 1);
    static WeylOperator thetaz(std::size_t nvars, long k = 1);
    static WeylOperator monomial(std::size_t nvars, const Rat& c, const Monomial& m);

    std::size_t nvars() const { return n_; }
    const std::vector<bool>& invertible() const { return inv_; }
    WeylOperator with_invertible(std::vector<bool> mask) const;
    WeylOperator all_invertible() const;

    // Leading term first.
    std::vector<Term> terms() const;
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    Rat coefficient(const Monomial& m) const;

    void add_term(const Rat& c, const Monomial& m);

    WeylOperator operator+(const WeylOperator& o) const;
    WeylOperator operator-(const WeylOperator& o) const;
    WeylOperator operator-() const;
    WeylOperator operator*(const WeylOperator& o) const;
    WeylOperator operator*(const Rat& c) const;
    WeylOperator& operator+=(const WeylOperator& o);
    WeylOperator& operator-=(const WeylOperator& o);
    bool operator==(const WeylOperator& o) const { return n_ == o.n_ && t_ == o.t_; }
    bool operator!=(const WeylOperator& o) const { return !(*this == o); }

    std::string str() const;

private:
    void check(const Monomial& m) const;
    std::size_t n_;
    std::vector<bool> inv_;
    std::map<Monomial, Rat, MonomialLess> t_;
};

WeylOperator operator*(const Rat& c, const WeylOperator& op);

// Product of a word of operators, reduced to normal order.
WeylOperator normal_order(const std::vector<WeylOperator>& word);

WeylOperator power(const WeylOperator& op, long k);

// Left-ideal generators of one operator family.
// eulers[0] is the homogeneity operator (E_0, or E-hat) when the family has one.
struct OperatorFamily {
    std::size_t nvars = 0;
    std::vector<std::vector<Int>> relations;
    std::vector<WeylOperator> boxes;
    std::vector<WeylOperator> eulers;
    bool integral_parameters = true;

    std::vector<WeylOperator> all() const;
};

// prod_{l_i<0} d_i^{-l_i} - prod_{l_i>0} d_i^{l_i}
WeylOperator gkz_box(std::size_t nvars, const std::vector<Int>& l);
// Same with (z d_i) in place of d_i.
WeylOperator hat_box(std::size_t nvars, const std::vector<Int>& l);

OperatorFamily gkz_generators(const IntegerMatrix& b, const std::vector<Rat>& beta);
OperatorFamily gkz_generators(const IntegerMatrix& b, const std::vector<Rat>& beta, const IntegerMatrix& kernel);

// Variables lambda_0, ..., lambda_t; beta = (beta_0, beta_1..beta_s).
OperatorFamily homogenized_generators(const IntegerMatrix& b, const std::vector<Rat>& beta);
OperatorFamily homogenized_generators(const IntegerMatrix& b, const std::vector<Rat>& beta, const IntegerMatrix& kernel);
// (-sum l, l)
std::vector<Int> homogenized_relation(const std::vector<Int>& l);

// beta = (beta_0, beta_1..beta_s).
OperatorFamily fl_hat_generators(const IntegerMatrix& b, const std::vector<Rat>& beta);
OperatorFamily fl_hat_generators(const IntegerMatrix& b, const std::vector<Rat>& beta, const IntegerMatrix& kernel);

struct FLImage {
    WeylOperator image;       // after lambda_0 -> z^2 d_z, d_0 -> 1/z
    long z_shift = 0;
    WeylOperator normalized;  // z^z_shift * image
};

FLImage fl_substitution(const WeylOperator& op);

// Variables lambda_1..lambda_{m+c}, all invertible; the last c are bundle variables.
// beta = (beta_0, beta_1..beta_s).
OperatorFamily star_n_generators(const IntegerMatrix& aprime, std::size_t m, const std::vector<Rat>& beta);
OperatorFamily star_n_generators(const IntegerMatrix& aprime, std::size_t m, const std::vector<Rat>& beta,
                                 const IntegerMatrix& kernel);
WeylOperator tilde_box(std::size_t m, std::size_t c, const std::vector<Int>& l);
// lambda^{l_+}-scaled star box: prod_{l_i>0} lambda_i^{l_i}(z d_i)^{l_i} - lambda^l prod_{l_i<0} ...
WeylOperator star_box(std::size_t nvars, const std::vector<Int>& l);

struct ShiftCertificate {
    std::vector<Int> l;         // c1 - c2
    std::vector<Int> g;         // componentwise min(c1, c2)
    std::vector<Int> box_relation;  // c2 - c1
    WeylOperator lhs;           // d^c1 - d^c2
    WeylOperator rhs;           // d^g * box(c2 - c1)
    bool verified = false;
};

ShiftCertificate shift_morphism_factorization(const IntegerMatrix& b, const std::vector<Int>& c1,
                                              const std::vector<Int>& c2);

enum class DualityKind { Plain, Hat, Tilde };

// Plain lives on lambda_0..lambda_{m+c}; hat and tilde on lambda_1..lambda_{m+c}.
WeylOperator duality_morphism(DualityKind kind, std::size_t m, std::size_t c);
// Right factor z^c prod lambda_{m+j}.
WeylOperator psi_operator(std::size_t m, std::size_t c);

// Data for the quantum D-module side. Variables are q_1..q_r (invertible).
struct QuantumSystem {
    std::size_t m = 0, c = 0, n = 0, r = 0;
    IntegerMatrix A;
    IntegerMatrix Aprime;
    IntegerMatrix P;  // r x m, rows are divisors representing the basis p
    IntegerMatrix L;  // (m+c) x r, dual to p
    IntegerMatrix M;  // r x (m+c), M L = I, M C = 0
    IntegerMatrix C;  // (m+c) x (n+c), A' C = I
    std::vector<std::vector<Int>> relations;
    std::vector<WeylOperator> Q;
    WeylOperator E_hat;

    WeylOperator D_hat(std::size_t i) const;  // i < m+c
    WeylOperator L_hat(std::size_t j) const;  // j < c
    WeylOperator c_top() const;
    // prod_j (L_hat_j + s z)
    WeylOperator c_top_shifted(long s) const;
    WeylOperator q_power(const std::vector<Int>& l) const;
};

QuantumSystem qdm_generators(const Fan& f, const IntegerMatrix& d);
QuantumSystem qdm_generators(const Fan& f, const IntegerMatrix& d, const IntegerMatrix& basis_p);
WeylOperator qdm_box(const QuantumSystem& s, const std::vector<Int>& l);

// Variables f_1..f_{n+c} followed by q_1..q_r.
WeylOperator theta_coordinate_change(const WeylOperator& op, const QuantumSystem& s);
// f -> 1, f d_f -> 0; keeps the trailing nq variables.
WeylOperator restrict_i_theta(const WeylOperator& op, std::size_t nf);
WeylOperator theta_restricted(const WeylOperator& op, const QuantumSystem& s);

struct MembershipOptions {
    long degree_bound = 2;  // total degree in lambda, theta, partial of the left coefficients
    long z_min = 0;
    long z_max = 0;
    bool negative_lambda = false;  // allow lambda^-k for invertible variables
};

struct MembershipResult {
    bool certified = false;
    std::vector<WeylOperator> coefficients;  // P = sum coefficients[k] * generators[k]
    std::size_t unknowns = 0;
};

MembershipResult bounded_ideal_membership(const WeylOperator& p, const std::vector<WeylOperator>& generators,
                                          const MembershipOptions& opt);

}  // namespace tglab
