#pragma once

#include <string>

#include "siegelkit/oracle.hpp"

namespace siegelkit {

// Canonical text rendering: terms ascending by (hx, hy); integral exponents
// without denominator (X, X^{2}, X^{-1}), half exponents as fractions
// (X^{-1/2}); unit coefficients elided next to a variable part.
std::string render(const BiLaurent& b);

// Polynomial in one variable, ascending coefficients: "1 + 3*X + 9*X^{2}".
std::string render_poly(const std::vector<Integer>& coeffs, const std::string& var = "X");

// {"n": 2, "entries": [["1","1/2"],["1/2","3"]]}
HalfIntMat matrix_from_json(const std::string& text);
std::string matrix_to_json(const HalfIntMat& b);

// {"n": [1,1], "m": [0,1], "zeta": [1,0]}
EGKDatum egk_from_json(const std::string& text);
std::string egk_to_json(const EGKDatum& g);

// {"a": [0,1], "eps": [1,0]}
NaiveEGK naive_from_json(const std::string& text);
std::string naive_to_json(const NaiveEGK& h);

// {"e_b": 1, "f_tilde": [[hx,hy,"coef"],...], "f": ["1","3"]}
std::string siegel_to_json(const SiegelResult& r);

// {"alphas": {"1": "2/3"}, "f_interp": [...], "f_formula": [...], "verdict": "match"}
std::string report_to_json(const DensityReport& rep);

}  // namespace siegelkit
