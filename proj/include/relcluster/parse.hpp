#pragma once

#include "relcluster/poly.hpp"

namespace relcluster {

struct ParseError : std::runtime_error {
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos)
    {
    }
    std::size_t position;
};

// Grammar (also documented in the README):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*' factor) | group)*        group juxtaposition multiplies
//   factor := base ['^' nat]
//   base   := nat ['/' nat] | variable | '(' expr ')'
// Parsing then printing then parsing is a fixpoint.
Polynomial parse_polynomial(const std::string& text, const RingPtr& ring);

} // namespace relcluster
