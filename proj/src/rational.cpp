#include "arith/rational.hpp"

#include "arith/errors.hpp"

#include <cctype>

namespace arith {

Rat phi_snapped(unsigned den_bits) {
    Int prev = 1, cur = 1; // F_1, F_2
    while (mpz_sizeinbase(cur.get_mpz_t(), 2) <= den_bits) {
        Int next = prev + cur;
        prev = cur;
        cur = next;
        if (mpz_sizeinbase(cur.get_mpz_t(), 2) > den_bits) break;
    }
    // cur just crossed the limit: convergent is cur/prev with prev <= 2^den_bits.
    Rat q(cur, prev);
    q.canonicalize();
    return q;
}

Rat parse_rational(const std::string& s) {
    if (s.empty()) throw ConfigError("empty rational literal");
    if (s == "phi") return phi_snapped();
    if (s == "-phi") return -phi_snapped();

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        Int p, q;
        if (mpz_set_str(p.get_mpz_t(), num.c_str(), 10) != 0 ||
            mpz_set_str(q.get_mpz_t(), den.c_str(), 10) != 0)
            throw ConfigError("bad rational literal: " + s);
        if (q == 0) throw ConfigError("zero denominator: " + s);
        Rat r(p, q);
        r.canonicalize();
        return r;
    }

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        Int p;
        if (digits.empty() || digits == "-" ||
            mpz_set_str(p.get_mpz_t(), digits.c_str(), 10) != 0)
            throw ConfigError("bad decimal literal: " + s);
        Int q = 1;
        mpz_ui_pow_ui(q.get_mpz_t(), 10, frac_len);
        Rat r(p, q);
        r.canonicalize();
        return r;
    }

    Int p;
    if (mpz_set_str(p.get_mpz_t(), s.c_str(), 10) != 0)
        throw ConfigError("bad integer literal: " + s);
    return Rat(p);
}

double to_double(const Rat& q) { return q.get_d(); }

Rat pow2(long e) {
    Int p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rat(p);
    Rat r(1, p);
    r.canonicalize();
    return r;
}

Rat rat_pow(const Rat& q, unsigned long e) {
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), q.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), q.get_den().get_mpz_t(), e);
    out.canonicalize();
    return out;
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

Rat dot(const std::vector<Rat>& a, const std::vector<Int>& i) {
    if (a.size() != i.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rat s = 0;
    for (size_t j = 0; j < a.size(); ++j) s += a[j] * Rat(i[j]);
    return s;
}

Int norm2(const std::vector<Int>& i) {
    Int s = 0;
    for (const auto& c : i) s += c * c;
    return s;
}

} // namespace arith
