#include "qrk/arith.hpp"

#include <cctype>

namespace qrk {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NotPolarizing: return "NotPolarizing";
        case ErrorKind::NotRegular: return "NotRegular";
        case ErrorKind::OnWall: return "OnWall";
        case ErrorKind::ExhaustedRetries: return "ExhaustedRetries";
        case ErrorKind::UngradedSupport: return "UngradedSupport";
        case ErrorKind::ValidationFailed: return "ValidationFailed";
        case ErrorKind::NonIntegerValue: return "NonIntegerValue";
        case ErrorKind::NoFit: return "NoFit";
        case ErrorKind::NoK: return "NoK";
        case ErrorKind::GammaNotGeneric: return "GammaNotGeneric";
        case ErrorKind::RankTooLarge: return "RankTooLarge";
        case ErrorKind::TotalMismatch: return "TotalMismatch";
        case ErrorKind::SupportLeak: return "SupportLeak";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    }
    return "Unknown";
}

namespace {

bool valid_integer(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Q parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den)) throw Error(ErrorKind::InvalidInput, "bad rational '" + raw + "'");
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    Z d(den);
    if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + raw + "'");
    Q q(Z(num), d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Q& q) { return q.get_str(); }

Z lcm_z(const Z& a, const Z& b) {
    Z r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace qrk
