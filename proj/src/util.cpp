#include <cstdlib>

#include "recon/bitvec.hpp"
#include "recon/error.hpp"
#include "recon/rational.hpp"

namespace recon {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
        case ErrorCode::ArityError: return "ArityError";
        case ErrorCode::InvalidSequence: return "InvalidSequence";
        case ErrorCode::InvalidSourceSequence: return "InvalidSourceSequence";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::GadgetTooLarge: return "GadgetTooLarge";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NotSatisfying: return "NotSatisfying";
        case ErrorCode::EndpointNotSatisfying: return "EndpointNotSatisfying";
        case ErrorCode::NotACover: return "NotACover";
        case ErrorCode::RetriesExhausted: return "RetriesExhausted";
        case ErrorCode::Unsatisfiable: return "Unsatisfiable";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(std::stoll(s));
        }
        std::int64_t n = std::stoll(s.substr(0, slash));
        std::int64_t d = std::stoll(s.substr(slash + 1));
        if (d == 0) fail(ErrorCode::ParseError, "zero denominator in rational '" + s + "'");
        return Rational(n, d);
    } catch (const std::logic_error&) {
        fail(ErrorCode::ParseError, "malformed rational '" + s + "'");
    }
}

BitVec BitVec::from_string(const std::string& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
        else if (bits[i] != '0') fail(ErrorCode::ParseError, "bit string must be 0/1");
    }
    return v;
}

bool operator<(const BitVec& a, const BitVec& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t i = 0; i < a.n_; ++i) {
        bool x = a.get(i), y = b.get(i);
        if (x != y) return y;
    }
    return false;
}

std::string BitVec::str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

}  // namespace recon
