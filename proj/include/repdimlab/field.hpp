#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "repdimlab/errors.hpp"

namespace rdl {

enum class FieldKind { rationals, prime_field };

/// Runtime description of the base field, used for dispatch and serialization.
struct FieldSpec {
    FieldKind kind = FieldKind::rationals;
    std::uint64_t characteristic = 0;  // 0 for Q, the prime p otherwise

    bool operator==(const FieldSpec&) const = default;
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void validate(const FieldSpec& fs) {
    if (fs.kind == FieldKind::rationals) {
        if (fs.characteristic != 0) throw input_error("rational field must have characteristic 0");
    } else {
        if (!is_prime_u64(fs.characteristic))
            throw input_error("prime-field characteristic must be prime, got " +
                              std::to_string(fs.characteristic));
    }
}

/// The rationals with eager canonicalization (gmp keeps values in lowest terms).
struct RatField {
    using Elem = mpq_class;

    static constexpr bool is_prime = false;

    Elem zero() const { return mpq_class(0); }
    Elem one() const { return mpq_class(1); }
    Elem from_int(long long n) const { return mpq_class(static_cast<long>(n)); }
    Elem add(const Elem& a, const Elem& b) const { return Elem(a + b); }
    Elem sub(const Elem& a, const Elem& b) const { return Elem(a - b); }
    Elem mul(const Elem& a, const Elem& b) const { return Elem(a * b); }
    Elem neg(const Elem& a) const { return Elem(-a); }
    Elem inv(const Elem& a) const {
        RDL_CHECK(a != 0, "division by zero in Q");
        return Elem(1 / a);
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    std::string to_string(const Elem& a) const { return a.get_str(); }
    Elem parse(const std::string& s) const {
        Elem v(s);
        v.canonicalize();
        return v;
    }

    FieldSpec spec() const { return {FieldKind::rationals, 0}; }
    bool operator==(const RatField&) const { return true; }
};

/// The prime field F_p for a machine-word prime p; elements are residues in [0, p).
struct FpField {
    std::uint64_t p = 2;

    using Elem = std::uint64_t;

    static constexpr bool is_prime = true;

    FpField() = default;
    explicit FpField(std::uint64_t prime) : p(prime) {
        if (!is_prime_u64(p)) throw input_error("modulus " + std::to_string(p) + " is not prime");
    }

    Elem zero() const { return 0; }
    Elem one() const { return p == 1 ? 0 : 1; }
    Elem from_int(long long n) const {
        long long r = n % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return static_cast<Elem>(r);
    }
    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p ? s - p : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p);
    }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const {
        RDL_CHECK(a != 0, "division by zero in F_p");
        // extended Euclid
        long long t = 0, newt = 1;
        long long r = static_cast<long long>(p), newr = static_cast<long long>(a);
        while (newr != 0) {
            long long q = r / newr;
            long long tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        RDL_CHECK(r == 1, "element not invertible mod p");
        if (t < 0) t += static_cast<long long>(p);
        return static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    std::string to_string(Elem a) const { return std::to_string(a); }
    Elem parse(const std::string& s) const {
        // accepts decimal residues and small signed integers
        bool negv = !s.empty() && s[0] == '-';
        std::uint64_t v = std::stoull(negv ? s.substr(1) : s);
        v %= p;
        return negv ? neg(v) : v;
    }

    FieldSpec spec() const { return {FieldKind::prime_field, p}; }
    bool operator==(const FpField& o) const { return p == o.p; }
};

/// Calls fn with the concrete field object matching a runtime FieldSpec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& fs, Fn&& fn) {
    validate(fs);
    if (fs.kind == FieldKind::rationals) return fn(RatField{});
    return fn(FpField{fs.characteristic});
}

/// splitmix64, used to derive independent sub-seeds from a master seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rdl
