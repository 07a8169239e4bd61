#include "invlim/rational.hpp"

namespace invlim {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw Error("ParseError", "empty fraction");
    auto check_int = [&](const std::string& t) {
        if (t.empty()) throw Error("ParseError", "bad fraction '" + s + "'");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw Error("ParseError", "bad fraction '" + s + "'");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                throw Error("ParseError", "bad fraction '" + s + "'");
    };
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            check_int(s);
            return Rat(Int(s));
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        check_int(num);
        check_int(den);
        Int d(den);
        if (d == 0) throw Error("ParseError", "zero denominator in '" + s + "'");
        return Rat(Int(num), d);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error("ParseError", "bad fraction '" + s + "'");
    }
}

std::string rat_str(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Int floor_div(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

}  // namespace invlim
