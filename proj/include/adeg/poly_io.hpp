#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "adeg/errors.hpp"
#include "adeg/multipoly.hpp"

namespace adeg {

// Textual polynomial format, exact round-trip:
//
//   vars <k>
//   <coeff_num>/<coeff_den> : e1 e2 ... ek
//
// Terms are written in the polynomial's canonical (lexicographic exponent)
// order, so serializing the same value always produces identical bytes.

inline void write_poly(std::ostream& os, const MultiPoly& p) {
    os << "vars " << p.num_vars() << "\n";
    for (const auto& [e, c] : p.terms()) {
        os << to_fraction_string(c) << " :";
        for (unsigned x : e) os << " " << x;
        os << "\n";
    }
}

inline std::string poly_to_text(const MultiPoly& p) {
    std::ostringstream os;
    write_poly(os, p);
    return os.str();
}

inline MultiPoly read_poly(std::istream& is) {
    std::string word;
    if (!(is >> word) || word != "vars") throw parse_error("polynomial file: expected 'vars' header");
    long k = -1;
    if (!(is >> k) || k < 0) throw parse_error("polynomial file: bad variable count");
    MultiPoly p(static_cast<std::size_t>(k));

    std::string line;
    std::getline(is, line); // rest of header line
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string coeff_text, colon;
        if (!(ls >> coeff_text >> colon) || colon != ":")
            throw parse_error("polynomial file: bad term line '" + line + "'");
        if (coeff_text.find('/') == std::string::npos)
            throw parse_error("polynomial file: coefficient must be num/den: '" + coeff_text + "'");
        Rational c = parse_rational(coeff_text);
        MultiPoly::Exponents e(static_cast<std::size_t>(k));
        for (long i = 0; i < k; ++i) {
            long x;
            if (!(ls >> x) || x < 0)
                throw parse_error("polynomial file: bad exponent in '" + line + "'");
            e[static_cast<std::size_t>(i)] = static_cast<unsigned>(x);
        }
        std::string extra;
        if (ls >> extra) throw parse_error("polynomial file: trailing tokens in '" + line + "'");
        if (p.coefficient(e) != 0)
            throw parse_error("polynomial file: duplicate exponent vector in '" + line + "'");
        p.add_term(e, c);
    }
    return p;
}

inline MultiPoly poly_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_poly(is);
}

inline void write_poly_file(const std::string& path, const MultiPoly& p) {
    std::ofstream os(path);
    if (!os) throw error("cannot open for writing: " + path);
    write_poly(os, p);
}

inline MultiPoly read_poly_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw error("cannot open for reading: " + path);
    return read_poly(is);
}

} // namespace adeg
