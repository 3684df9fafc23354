#include "tglab/arith.hpp"

#include "tglab/error.hpp"

namespace tglab {

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_short_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return to_string(x);
}

Rat parse_rational(const std::string& s) {
    if (s.empty()) throw Error("ParseError", "empty rational");
    Rat r;
    if (r.set_str(s, 10) != 0) throw Error("ParseError", "bad rational '" + s + "'");
    if (r.get_den() == 0) throw Error("ParseError", "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

Int gcd_of(const std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

Int lcm_of(const std::vector<Int>& v) {
    Int l = 1;
    for (const auto& x : v) {
        if (x == 0) continue;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_mpz_t());
    }
    return l;
}

Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rat falling(const Rat& x, long k) {
    Rat r = 1;
    for (long i = 0; i < k; ++i) r *= (x - i);
    return r;
}

Rat rising(const Rat& x, long k) {
    Rat r = 1;
    for (long i = 0; i < k; ++i) r *= (x + i);
    return r;
}

std::vector<Int> to_int_vector(const std::vector<long>& v) {
    std::vector<Int> out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<Int> primitive(const std::vector<Rat>& v) {
    std::vector<Int> dens;
    for (const auto& x : v) dens.push_back(x.get_den());
    Int l = lcm_of(dens);
    std::vector<Int> out;
    for (const auto& x : v) {
        Rat y = x * l;
        out.push_back(y.get_num());
    }
    Int g = gcd_of(out);
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

}  // namespace tglab
