#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrk {

using Int = std::int64_t;
using Q = mpq_class;
using Z = mpz_class;

// Lattice points and multiplicities are int64; every operation that could
// overflow goes through these helpers and throws instead of wrapping.

enum class ErrorKind {
    InvalidInput,
    NotPolarizing,
    NotRegular,
    OnWall,
    ExhaustedRetries,
    UngradedSupport,
    ValidationFailed,
    NonIntegerValue,
    NoFit,
    NoK,
    GammaNotGeneric,
    RankTooLarge,
    TotalMismatch,
    SupportLeak,
    Overflow,
    InsufficientSamples,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

    // Internal consistency failures as opposed to bad input.
    bool internal() const {
        return kind_ == ErrorKind::NonIntegerValue || kind_ == ErrorKind::TotalMismatch ||
               kind_ == ErrorKind::ValidationFailed || kind_ == ErrorKind::Overflow;
    }

private:
    ErrorKind kind_;
};

namespace checked {

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "int64 addition");
    return r;
}
inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "int64 subtraction");
    return r;
}
inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "int64 multiplication");
    return r;
}

}  // namespace checked

inline Int to_int(const Z& z) {
    if (!z.fits_slong_p()) throw Error(ErrorKind::Overflow, "integer does not fit int64: " + z.get_str());
    return z.get_si();
}

inline Int to_int(const Q& q) {
    if (q.get_den() != 1) throw Error(ErrorKind::NonIntegerValue, q.get_str());
    return to_int(Z(q.get_num()));
}

inline int sgn(const Q& q) { return ::sgn(q); }

// "p/q" or "p"; throws InvalidInput.
Q parse_rational(const std::string& s);
std::string format_rational(const Q& q);

Z lcm_z(const Z& a, const Z& b);

}  // namespace qrk
