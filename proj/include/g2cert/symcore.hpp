#ifndef G2CERT_SYMCORE_HPP
#define G2CERT_SYMCORE_HPP

// Exact symbolic kernel: arbitrary-precision rationals, sparse multivariate
// polynomials, canonical rational functions, symbol atoms with derivative
// rules and algebraic relations, differentiation, substitution, zero testing,
// and an expression parser.

#include "g2cert/calculus.hpp"
#include "g2cert/context.hpp"
#include "g2cert/errors.hpp"
#include "g2cert/gcd.hpp"
#include "g2cert/linalg.hpp"
#include "g2cert/monomial.hpp"
#include "g2cert/parser.hpp"
#include "g2cert/polynomial.hpp"
#include "g2cert/ratexpr.hpp"
#include "g2cert/rational.hpp"
#include "g2cert/rng.hpp"
#include "g2cert/symbols.hpp"

#endif
