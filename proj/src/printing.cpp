#include "cmot/printing.hpp"

#include <sstream>

namespace cmot {

namespace {

bool needs_parens(const std::string& s) {
    return s.find('+') != std::string::npos || s.find('/') != std::string::npos ||
           s.find('-') != std::string::npos;
}

std::string coeff_prefix(const std::string& cs, bool is_one) {
    if (is_one) return "";
    if (needs_parens(cs)) return "(" + cs + ")*";
    return cs + "*";
}

} // namespace

std::string fqpoly_str(const FqPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const FqElem& c = f.coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c.str();
        } else {
            os << coeff_prefix(c.str(), c.is_one()) << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::string qelem_str(const QElem& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::string n = fqpoly_str(f.num(), var);
    if (f.is_polynomial()) return n;
    std::string d = fqpoly_str(f.den(), var);
    return "(" + n + ")/(" + d + ")";
}

std::string qpoly_str(const QPoly& f, const std::string& var, const std::string& tvar) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const QElem& c = f.coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = qelem_str(c, tvar);
        if (i == 0) {
            os << cs;
        } else {
            os << coeff_prefix(cs, c.is_one()) << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::string series_str(const Series<FqElem>& s, const std::string& var) {
    std::ostringstream os;
    bool first = true;
    for (int e = s.order(); e < s.prec(); ++e) {
        FqElem c = s.coeff(e);
        if (c.is_zero()) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = c.str();
        if (e == 0) {
            os << cs;
        } else {
            os << coeff_prefix(cs, c.is_one()) << var;
            if (e != 1) os << "^" << e;
        }
    }
    if (first) os << "0";
    os << "+O(" << var << "^" << s.prec() << ")";
    return os.str();
}

} // namespace cmot
