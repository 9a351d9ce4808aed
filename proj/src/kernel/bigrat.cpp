#include "mastercount/kernel/bigrat.hpp"

#include "mastercount/kernel/error.hpp"

#include <cctype>

namespace mastercount::kernel {

BigRat parse_rat(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto valid_int = [](std::string_view t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string_view num = std::string_view(s).substr(0, slash);
    std::string_view den = slash == std::string::npos ? std::string_view("1") : std::string_view(s).substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw domain_error("malformed rational '" + std::string(text) + "' (expected p or p/q)");
    std::string ns(num);
    if (ns[0] == '+') ns.erase(0, 1);
    BigInt d(std::string{den});
    if (d == 0) throw domain_error("zero denominator in '" + std::string(text) + "'");
    BigRat q(BigInt(ns), d);
    q.canonicalize();
    return q;
}

std::string to_string(const BigRat& q) {
    return q.get_str();
}

BigRat pochhammer(const BigRat& x, unsigned k) {
    BigRat r = 1;
    for (unsigned j = 0; j < k; ++j) r *= x + j;
    return r;
}

}  // namespace mastercount::kernel
