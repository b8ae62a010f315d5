// dsl.hpp
// Compact textual language for state constructions, e.g. "A^2 S(0.5) vac"
// for a two-photon-added squeezed vacuum. Grammar (LL(1), whitespace between
// tokens ignored):
//
//   expr      := unary* primitive
//   unary     := "D(" num "," num ")" | "S(" num ("," num)? ")"
//              | "A" ("^" uint)?
//   primitive := "vac" | "fock(" uint ")" | "coh(" num "," num ")"
//              | "thermal(" num ")" | "cat+(" num ")" | "cat-(" num ")"
//
// Unary operators apply right-to-left onto the primitive: the leftmost token
// is the outermost operator, matching operator-on-ket order a'^m S(r)|0>.
// Numbers are decimal with optional sign and exponent. Parameter validity is
// checked at evaluation, not at parse time.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ncw/fock.hpp"

namespace ncw::dsl {

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct Primitive {
    enum class Kind { vac, fock, coh, thermal, cat };
    Kind kind = Kind::vac;
    double a = 0.0;  // coh: Re alpha; thermal: nbar; cat: R
    double b = 0.0;  // coh: Im alpha
    int m = 0;       // fock index
    Parity parity = Parity::even;
    Span span;
};

struct Unary {
    enum class Kind { displace, squeeze, add };
    Kind kind = Kind::add;
    double a = 0.0;  // displace: Re beta; squeeze: r
    double b = 0.0;  // displace: Im beta; squeeze: theta
    int m = 1;       // photon-addition count
    Span span;
};

struct StateExpr {
    std::vector<Unary> ops;  // ops[0] is the outermost operator
    Primitive prim;

    bool operator==(const StateExpr&) const;
};

// Throws ParseError (byte offset + expected-token set); never partial.
StateExpr parse(std::string_view text);

// Canonical text that reparses to an identical tree.
std::string pretty_print(const StateExpr& e);

// A pure pipeline yields a FockVector; a thermal primitive yields a
// DensityOperator with operators applied by conjugation (photon addition by
// the a'^m rho a^m rule). Constructor errors are rethrown as EvalError with
// the source span of the offending construct.
State eval(const StateExpr& e, int dim, double tail_tol = kDefaultTailTol);

}  // namespace ncw::dsl
