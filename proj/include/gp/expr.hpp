#pragma once

#include <stdexcept>
#include <string>

#include "gp/schouten.hpp"

namespace gp {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ('^' nat)?
//   primary:= rational | var | deriv | '(' expr ')'
MultiDerivation parse_multiderivation(const std::string& text, const AlgebraSignature& sig);
GradedPolynomial parse_polynomial(const std::string& text, const AlgebraSignature& sig);

std::string to_string(const GradedPolynomial& f, const AlgebraSignature& sig);
std::string to_string(const MultiDerivation& a, const AlgebraSignature& sig);
std::string to_string(const Rational& q);

}  // namespace gp
