#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tglab {

using Int = mpz_class;
using Rat = mpq_class;

std::string to_string(const Int& x);
// Always "num/den", including integers ("3/1").
std::string to_string(const Rat& x);
// Short form: "3" for integers, "3/4" otherwise.
std::string to_short_string(const Rat& x);

// Accepts "n", "-n", "n/d".
Rat parse_rational(const std::string& s);

Int gcd_of(const std::vector<Int>& v);
Int lcm_of(const std::vector<Int>& v);
Int binomial(long n, long k);

// x (x-1) ... (x-k+1)
Rat falling(const Rat& x, long k);
// x (x+1) ... (x+k-1)
Rat rising(const Rat& x, long k);

std::vector<Int> to_int_vector(const std::vector<long>& v);

// Scales a rational vector to the primitive integer vector with the same direction.
std::vector<Int> primitive(const std::vector<Rat>& v);

inline long to_long(const Int& x) { return x.get_si(); }

}  // namespace tglab
