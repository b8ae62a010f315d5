#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ncw/dsl.hpp"
#include "ncw/fock.hpp"

using namespace ncw;
using dsl::Primitive;
using dsl::StateExpr;
using dsl::Unary;

namespace {

bool expects(const ParseError& e, const std::string& token) {
    return std::find(e.expected().begin(), e.expected().end(), token) !=
           e.expected().end();
}

double max_diff(const FockVector& a, const FockVector& b) {
    REQUIRE(a.dim() == b.dim());
    double worst = 0.0;
    for (int n = 0; n < a.dim(); ++n)
        worst = std::max(worst, std::abs(a.amplitude(n) - b.amplitude(n)));
    return worst;
}

}  // namespace

TEST_CASE("parsing the catalog") {
    const StateExpr vac = dsl::parse("vac");
    CHECK(vac.ops.empty());
    CHECK(vac.prim.kind == Primitive::Kind::vac);

    const StateExpr pas = dsl::parse("A^2 S(0.5) vac");
    REQUIRE(pas.ops.size() == 2);
    CHECK(pas.ops[0].kind == Unary::Kind::add);
    CHECK(pas.ops[0].m == 2);
    CHECK(pas.ops[1].kind == Unary::Kind::squeeze);
    CHECK(pas.ops[1].a == 0.5);
    CHECK(pas.ops[1].b == 0.0);

    const StateExpr full = dsl::parse("  D(1.5,-2e-1)S(0.3,1.2)A fock(4) ");
    REQUIRE(full.ops.size() == 3);
    CHECK(full.ops[0].kind == Unary::Kind::displace);
    CHECK(full.ops[0].a == 1.5);
    CHECK(full.ops[0].b == -0.2);
    CHECK(full.ops[1].b == 1.2);
    CHECK(full.ops[2].m == 1);
    CHECK(full.prim.kind == Primitive::Kind::fock);
    CHECK(full.prim.m == 4);

    const StateExpr cats = dsl::parse("cat-(1.25)");
    CHECK(cats.prim.kind == Primitive::Kind::cat);
    CHECK(cats.prim.parity == Parity::odd);
    CHECK(cats.prim.a == 1.25);

    const StateExpr th = dsl::parse("thermal(2.5)");
    CHECK(th.prim.kind == Primitive::Kind::thermal);
    CHECK(th.prim.a == 2.5);

    const StateExpr coh = dsl::parse("coh(-1.5e-2,+3)");
    CHECK(coh.prim.a == -0.015);
    CHECK(coh.prim.b == 3.0);
}

TEST_CASE("syntax errors carry offsets and expected sets") {
    // a truncated argument list: offset 6, expecting ")" or ","
    try {
        dsl::parse("S(0.5 fock(2)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 6);
        CHECK(expects(e, "\")\""));
        CHECK(expects(e, "\",\""));
    }

    try {
        dsl::parse("fock(");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
        CHECK(expects(e, "unsigned integer"));
    }

    try {
        dsl::parse("");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 0);
    }

    try {
        dsl::parse("vac extra");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
        CHECK(expects(e, "end of input"));
    }

    CHECK_THROWS_AS(dsl::parse("cat*(1)"), ParseError);
    CHECK_THROWS_AS(dsl::parse("A^2.5 vac"), ParseError);
    CHECK_THROWS_AS(dsl::parse("A^-2 vac"), ParseError);
    CHECK_THROWS_AS(dsl::parse("D(1) vac"), ParseError);
    CHECK_THROWS_AS(dsl::parse("gorilla(3)"), ParseError);
    CHECK_THROWS_AS(dsl::parse("fock(2) vac"), ParseError);
}

TEST_CASE("pretty-print round trip on generated trees") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> num(-4.0, 4.0);
    std::uniform_int_distribution<int> opcount(0, 3);
    std::uniform_int_distribution<int> opkind(0, 2);
    std::uniform_int_distribution<int> primkind(0, 4);
    std::uniform_int_distribution<int> photons(1, 9);
    std::uniform_int_distribution<int> coin(0, 1);

    for (int iter = 0; iter < 500; ++iter) {
        StateExpr e;
        const int n_ops = opcount(rng);
        for (int i = 0; i < n_ops; ++i) {
            Unary op;
            switch (opkind(rng)) {
                case 0:
                    op.kind = Unary::Kind::displace;
                    op.a = num(rng);
                    op.b = num(rng);
                    break;
                case 1:
                    op.kind = Unary::Kind::squeeze;
                    op.a = std::abs(num(rng));
                    op.b = coin(rng) ? std::abs(num(rng)) : 0.0;
                    break;
                default:
                    op.kind = Unary::Kind::add;
                    op.m = photons(rng);
            }
            e.ops.push_back(op);
        }
        switch (primkind(rng)) {
            case 0: e.prim.kind = Primitive::Kind::vac; break;
            case 1:
                e.prim.kind = Primitive::Kind::fock;
                e.prim.m = photons(rng);
                break;
            case 2:
                e.prim.kind = Primitive::Kind::coh;
                e.prim.a = num(rng);
                e.prim.b = num(rng);
                break;
            case 3:
                e.prim.kind = Primitive::Kind::thermal;
                e.prim.a = std::abs(num(rng));
                break;
            default:
                e.prim.kind = Primitive::Kind::cat;
                e.prim.a = std::abs(num(rng));
                e.prim.parity = coin(rng) ? Parity::even : Parity::odd;
        }
        const std::string text = dsl::pretty_print(e);
        CAPTURE(text);
        const StateExpr back = dsl::parse(text);
        CHECK(back == e);
    }
}

TEST_CASE("parser survives arbitrary byte strings") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> len(0, 40);
    std::uniform_int_distribution<int> byte(0, 255);
    int parsed = 0;
    for (int iter = 0; iter < 20000; ++iter) {
        std::string s;
        const int n = len(rng);
        for (int i = 0; i < n; ++i) s.push_back(static_cast<char>(byte(rng)));
        try {
            dsl::parse(s);
            ++parsed;
        } catch (const ParseError& e) {
            CHECK(e.offset() <= s.size());
        }
    }
    CHECK(parsed >= 0);  // reaching here without a crash is the property
}

TEST_CASE("evaluation matches the dedicated constructors") {
    // photon addition commutes with squeezing the way the families demand
    const State a = dsl::eval(dsl::parse("A S(0.3) vac"), 64);
    const State b = dsl::eval(dsl::parse("S(0.3) fock(1)"), 64);
    CHECK(max_diff(std::get<FockVector>(a), std::get<FockVector>(b)) < 1e-10);

    const State st = dsl::eval(dsl::parse("S(0.5) thermal(1)"), 128);
    const DensityOperator want = squeezed_thermal(1.0, SqueezeParam(0.5, 0.0), 128);
    const DensityOperator& got = std::get<DensityOperator>(st);
    double worst = 0.0;
    for (int i = 0; i < 128; ++i)
        for (int j = 0; j < 128; ++j)
            worst = std::max(worst, std::abs(want.at(i, j) - got.at(i, j)));
    CHECK(worst < 1e-12);

    const State d = dsl::eval(dsl::parse("D(1,0) vac"), 64);
    CHECK(max_diff(std::get<FockVector>(d), coherent(cx(1, 0), 64)) < 1e-12);

    const State pac = dsl::eval(dsl::parse("A^2 coh(1,0)"), 64);
    CHECK(max_diff(std::get<FockVector>(pac), add_photons(coherent(cx(1, 0), 64), 2)) <
          1e-12);

    // displaced thermal pipelines stay density operators
    const State dth = dsl::eval(dsl::parse("D(0.5,0) thermal(1)"), 64);
    CHECK(std::holds_alternative<DensityOperator>(dth));
}

TEST_CASE("operator ordering matters for m >= 2") {
    const FockVector pas = std::get<FockVector>(dsl::eval(dsl::parse("A^2 S(0.5) vac"), 64));
    const FockVector sns = std::get<FockVector>(dsl::eval(dsl::parse("S(0.5) fock(2)"), 64));
    double worst = 0.0;
    for (int n = 0; n < 64; ++n)
        worst = std::max(worst, std::abs(std::abs(pas.amplitude(n)) -
                                         std::abs(sns.amplitude(n))));
    CHECK(worst > 1e-3);
}

TEST_CASE("evaluation errors carry source spans") {
    try {
        dsl::eval(dsl::parse("cat-(0)"), 32);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.code() == errc::degenerate_input);
        CHECK(e.begin() == 0);
        CHECK(e.end() == 7);
    }

    try {
        dsl::eval(dsl::parse("fock(99)"), 8);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.code() == errc::index_out_of_range);
    }

    try {
        dsl::eval(dsl::parse("A^0 vac"), 8);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.code() == errc::invalid_parameter);
        CHECK(e.begin() == 0);
    }

    // parameters are checked at eval, not parse
    CHECK_NOTHROW(dsl::parse("thermal(-3)"));
    CHECK_THROWS_AS(dsl::eval(dsl::parse("thermal(-3)"), 32), EvalError);
}
