// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ncw/dsl.hpp"
#include "ncw/fock.hpp"
#include "ncw/gaussian.hpp"
#include "ncw/husimi.hpp"
#include "ncw/measure.hpp"
#include "ncw/quad.hpp"
#include "ncw/verify.hpp"

using namespace ncw;

namespace {

using clock_type = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string& msg) {
        pass = false;
        notes.push_back("FAIL: " + msg);
    }
    void note(const std::string& msg) { notes.push_back(msg); }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

constexpr int kDimCap = 8192;

// Construct at growing dims until the tail fits.
template <typename F>
auto with_dim(F&& make, int base = 64) {
    int dim = base;
    for (;;) {
        try {
            return make(dim);
        } catch (const Error& e) {
            if (e.code() != errc::dimension_too_small || dim >= kDimCap) throw;
            dim *= 2;
        }
    }
}

double nc_value(const State& s, double tol = 1e-6) {
    return nc(s, rule_for_state(s, tol)).value;
}

State pure_state(const std::function<FockVector(int)>& f) {
    return with_dim([&](int d) { return State(f(d)); });
}

State mixed_state(const std::function<DensityOperator(int)>& f) {
    return with_dim([&](int d) { return State(f(d)); });
}

double nc_fock(int m) {
    return nc_value(pure_state([&](int d) { return fock(m, d); }));
}

double nc_squeezed_vac(double r) {
    return nc_value(pure_state([&](int d) {
        return squeezed_coherent(SqueezeParam(r, 0.0), cx(0, 0), d);
    }));
}

double nc_pats(int m, double nbar) {
    return nc_value(mixed_state([&](int d) {
        return add_photons(thermal(nbar, d), m);
    }));
}

double nc_st(double nbar, double r) {
    return nc_value(mixed_state([&](int d) {
        return squeezed_thermal(nbar, SqueezeParam(r, 0.0), d);
    }));
}

double nc_pas(int m, double r) {
    return nc_value(pure_state([&](int d) {
        return photon_added_squeezed_vacuum(SqueezeParam(r, 0.0), m, d);
    }));
}

double nc_sns(int m, double r) {
    return nc_value(pure_state([&](int d) {
        return squeezed_number(SqueezeParam(r, 0.0), m, d);
    }));
}

double nc_pac(int m, double big_r) {
    if (big_r == 0.0) return nc_fock(m);
    return nc_value(pure_state([&](int d) {
        return add_photons(coherent(cx(big_r, 0.0), d), m);
    }));
}

double nc_cat(double big_r, Parity p) {
    return nc_value(pure_state([&](int d) { return cat_state(big_r, p, d); }));
}

// ---- criterion 1 ----

void criterion_1(Criterion& c) {
    double worst = 0.0;
    try {
        for (int m = 0; m <= 5; ++m)
            worst = std::max(worst, std::abs(nc_fock(m) - closed_form_fock(m)));
        c.note("fock m in 0..5: max |err| = " + fmt(worst));

        double w2 = 0.0;
        for (double r : {0.0, 0.25, 0.5, 0.75, 1.0})
            w2 = std::max(w2, std::abs(nc_squeezed_vac(r) - closed_form_squeezed(r)));
        c.note("squeezed vacuum r in {0..1}: max |err| = " + fmt(w2));
        worst = std::max(worst, w2);

        double w3 = 0.0;
        for (int m = 1; m <= 5; ++m)
            w3 = std::max(w3, std::abs(nc_pats(m, 1.0) - closed_form_pats(m)));
        c.note("photon-added thermal m in 1..5: max |err| = " + fmt(w3));
        worst = std::max(worst, w3);

        double w4 = 0.0;
        for (double nbar : {0.5, 1.0, 2.0, 3.0})
            for (int ri = 1; ri <= 10; ++ri) {
                const double r = 0.1 * ri;
                w4 = std::max(w4, std::abs(nc_st(nbar, r) -
                                           closed_form_squeezed_thermal(nbar, r)));
            }
        c.note("squeezed thermal 10x4 grid: max |err| = " + fmt(w4));
        worst = std::max(worst, w4);

        if (worst > 1e-4)
            c.fail("closed-form disagreement " + fmt(worst) + " > 1e-4");

        // speed clause: one representative point at N=64, Nr=200, Na=256
        const FockVector probe = squeezed_coherent(SqueezeParam(0.5, 0.0), cx(0, 0), 64);
        const QuadratureRule rule = rule_for_state(probe, 1e-6);
        if (rule.radial_nodes.size() != 200 || rule.angular_count != 256)
            c.note("note: representative rule is " +
                   std::to_string(rule.radial_nodes.size()) + "x" +
                   std::to_string(rule.angular_count));
        const auto t0 = clock_type::now();
        (void)nc_pure(probe, rule);
        const double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
        c.note("single point at N=64, Nr=200, Na=256: " + fmt(secs) + " s");
        if (secs >= 1.0) c.fail("representative point took " + fmt(secs) + " s");
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
}

// ---- criterion 2 ----

void criterion_2(Criterion& c) {
    try {
        struct Spot {
            const char* name;
            double got, want, tol;
        };
        const Spot spots[] = {
            {"N_w(|1>)", nc_fock(1), 0.577216, 1e-4},
            {"N_w(S(1)|0>)", nc_squeezed_vac(1.0), 0.433781, 1e-4},
            {"N_w(PATS m=1)", nc_pats(1, 1.0), 0.115931, 1e-4},
            {"N_w(ST nbar=1, r=0.5)", nc_st(1.0, 0.5), 0.0927, 1e-3},
        };
        for (const Spot& s : spots) {
            const double err = std::abs(s.got - s.want);
            c.note(std::string(s.name) + " = " + fmt(s.got) + " (want " + fmt(s.want) +
                   " +- " + fmt(s.tol) + ")");
            if (err > s.tol)
                c.fail(std::string(s.name) + " off by " + fmt(err));
        }
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
}

// ---- criterion 3 ----

void criterion_3(Criterion& c) {
    try {
        double worst = 0.0;
        const double base_fock = nc_fock(1);
        const double base_sq = nc_squeezed_vac(0.5);
        for (const cx beta : {cx(2, 0), cx(0, 2), cx(-1.4, 1.4)}) {
            worst = std::max(worst, std::abs(base_fock - nc_value(pure_state([&](int d) {
                                                 return displace(fock(1, d), beta);
                                             }))));
            worst = std::max(
                worst, std::abs(base_sq - nc_value(pure_state([&](int d) {
                           return displace(
                               squeezed_coherent(SqueezeParam(0.5, 0.0), cx(0, 0), d),
                               beta);
                       }))));
        }
        c.note("displacement drift (|beta| <= 2): " + fmt(worst));
        if (worst > 2e-6) c.fail("displacement drift " + fmt(worst) + " > 2e-6");

        double rot = 0.0;
        const double cat_base = nc_cat(1.0, Parity::even);
        const double sns_base = nc_sns(2, 0.4);
        for (double phi : {0.37, 2.0 * M_PI / 7.0, 1.9}) {
            rot = std::max(rot, std::abs(cat_base - nc_value(pure_state([&](int d) {
                                             return rotate(cat_state(1.0, Parity::even, d), phi);
                                         }))));
            rot = std::max(rot,
                           std::abs(sns_base - nc_value(pure_state([&](int d) {
                               return rotate(squeezed_number(SqueezeParam(0.4, 0.0), 2, d), phi);
                           }))));
        }
        c.note("rotation drift: " + fmt(rot));
        if (rot > 2e-6) c.fail("rotation drift " + fmt(rot) + " > 2e-6");

        double ind = 0.0;
        const double want = closed_form_squeezed(0.5);
        for (double theta : {0.0, 0.9, 2.2})
            for (const cx alpha : {cx(0, 0), cx(1, 0.5), cx(0, -1.2)})
                ind = std::max(ind, std::abs(want - nc_value(pure_state([&](int d) {
                                       return squeezed_coherent(SqueezeParam(0.5, theta),
                                                                alpha, d);
                                   }))));
        c.note("theta/alpha independence drift: " + fmt(ind));
        if (ind > 2e-6) c.fail("theta/alpha drift " + fmt(ind) + " > 2e-6");
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
}

// ---- criterion 4 ----

void criterion_4(Criterion& c) {
    try {
        // Fig 1a: monotone increase in m
        double prev = -1.0;
        bool mono = true;
        for (int m = 0; m <= 10; ++m) {
            const double v = nc_fock(m);
            if (v <= prev) mono = false;
            prev = v;
        }
        if (mono)
            c.note("1a: N_w(|m>) strictly increasing over m in 0..10");
        else
            c.fail("1a: not monotone in m");

        // Fig 2a: decreasing in R; m-spread collapses by R = 3
        const std::vector<double> grid_r = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
        std::vector<std::vector<double>> pac(6);
        for (int m = 1; m <= 5; ++m)
            for (double R : grid_r) pac[m].push_back(nc_pac(m, R));
        bool dec = true;
        for (int m = 1; m <= 5; ++m)
            for (size_t i = 0; i + 1 < pac[m].size(); ++i)
                if (pac[m][i + 1] >= pac[m][i] + 1e-6) dec = false;
        if (dec)
            c.note("2a: decreasing in R for every m");
        else
            c.fail("2a: not decreasing in R");
        auto spread = [&](size_t col) {
            double lo = 1e300, hi = -1e300;
            for (int m = 1; m <= 5; ++m) {
                lo = std::min(lo, pac[m][col]);
                hi = std::max(hi, pac[m][col]);
            }
            return hi - lo;
        };
        const double s0 = spread(0), s3 = spread(grid_r.size() - 1);
        c.note("2a: spread(R=3)/spread(R=0) = " + fmt(s3 / s0));
        if (!(s3 < 0.2 * s0)) c.fail("2a: m-spread at R=3 not under 20%");

        // Fig 2b: odd > even for small R, near-equal at R = 1.5
        for (double R : {0.3, 0.5, 0.8})
            if (!(nc_cat(R, Parity::odd) > nc_cat(R, Parity::even)))
                c.fail("2b: odd cat not above even cat at R = " + fmt(R));
        const double gap =
            std::abs(nc_cat(1.5, Parity::odd) - nc_cat(1.5, Parity::even));
        c.note("2b: parity gap at R=1.5 = " + fmt(gap));
        if (!(gap < 0.02)) c.fail("2b: parity gap at R=1.5 is " + fmt(gap));

        // Fig 3a: PAS non-monotone for m >= 2; m-order inversion in [0.30, 0.60]
        std::vector<std::vector<double>> pas(6);
        const std::vector<double> rr = {0.0, 0.1, 0.2, 0.3, 0.35, 0.4, 0.45,
                                        0.5, 0.55, 0.6, 0.7, 0.8, 0.9, 1.0};
        for (int m = 1; m <= 5; ++m)
            for (double r : rr) pas[m].push_back(nc_pas(m, r));
        for (int m = 2; m <= 5; ++m) {
            bool dips = false, rises = false;
            for (size_t i = 0; i + 1 < rr.size(); ++i) {
                if (pas[m][i + 1] < pas[m][i] - 1e-5) dips = true;
                if (dips && pas[m][i + 1] > pas[m][i] + 1e-5) rises = true;
            }
            if (!(dips && rises)) c.fail("3a: no dip-then-rise at m = " + std::to_string(m));
        }
        bool inversion = false;
        for (size_t i = 0; i < rr.size(); ++i) {
            if (rr[i] < 0.30 || rr[i] > 0.60) continue;
            for (int m = 1; m <= 4; ++m)
                for (int mm = m + 1; mm <= 5; ++mm)
                    if (pas[mm][i] < pas[m][i] - 1e-6) inversion = true;
        }
        if (inversion)
            c.note("3a: dip-then-rise for m >= 2 with m-order inversion in [0.30, 0.60]");
        else
            c.fail("3a: no m-order inversion found in r range [0.30, 0.60]");

        // Fig 3b: SNS monotone in r and m
        std::vector<std::vector<double>> sns(6);
        const std::vector<double> r5 = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
        for (int m = 1; m <= 5; ++m)
            for (double r : r5) sns[m].push_back(nc_sns(m, r));
        bool sns_ok = true;
        for (int m = 1; m <= 5; ++m)
            for (size_t i = 0; i + 1 < r5.size(); ++i)
                if (sns[m][i + 1] <= sns[m][i]) sns_ok = false;
        for (int m = 1; m < 5; ++m)
            for (size_t i = 0; i < r5.size(); ++i)
                if (sns[m + 1][i] <= sns[m][i] - 1e-9) sns_ok = false;
        if (sns_ok)
            c.note("3b: monotone in r and m");
        else
            c.fail("3b: not monotone");

        // Fig 4a: nbar-independent and saturating
        double spread4a = 0.0;
        std::vector<double> by_m;
        for (int m = 1; m <= 10; ++m) {
            double lo = 1e300, hi = -1e300;
            for (double nbar : {1.0, 3.0, 5.0}) {
                const double v = nc_pats(m, nbar);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            spread4a = std::max(spread4a, hi - lo);
            by_m.push_back(hi);
        }
        c.note("4a: max spread across nbar = " + fmt(spread4a));
        if (spread4a > 1e-4) c.fail("4a: nbar dependence " + fmt(spread4a) + " > 1e-4");
        // "saturating": monotone rise with strictly flattening increments
        // (the closed form grows like ln(m)/2, so the curve levels off
        // without a finite plateau)
        bool increasing = true, flattening = true;
        for (size_t i = 0; i + 1 < by_m.size(); ++i) {
            if (by_m[i + 1] <= by_m[i]) increasing = false;
            if (i + 2 < by_m.size() &&
                by_m[i + 2] - by_m[i + 1] >= by_m[i + 1] - by_m[i])
                flattening = false;
        }
        if (increasing && flattening)
            c.note("4a: increasing with flattening increments (" +
                   fmt(by_m[1] - by_m[0]) + " down to " + fmt(by_m[9] - by_m[8]) + ")");
        else
            c.fail("4a: not saturating");

        // Fig 4b: positive for all r >= 0.05, and increasing in nbar
        // (the second clause asserts the criterion exactly as specified)
        const std::vector<double> r4 = {0.05, 0.25, 0.5, 0.75, 1.0};
        std::vector<std::vector<double>> st(6);
        for (int nb = 1; nb <= 5; ++nb)
            for (double r : r4) st[nb].push_back(nc_st(nb, r));
        bool positive = true;
        for (int nb = 1; nb <= 5; ++nb)
            for (double v : st[nb])
                if (!(v > 5e-5)) positive = false;
        if (positive)
            c.note("4b: N_w > 0 for all r >= 0.05, nbar <= 5");
        else
            c.fail("4b: nonpositive value found for some r >= 0.05");
        bool inc_nbar = true;
        double worst_gap = 0.0;
        for (size_t i = 0; i < r4.size(); ++i)
            for (int nb = 1; nb < 5; ++nb)
                if (st[nb + 1][i] <= st[nb][i]) {
                    inc_nbar = false;
                    worst_gap = std::max(worst_gap, st[nb][i] - st[nb + 1][i]);
                }
        if (inc_nbar) {
            c.note("4b: increasing in nbar");
        } else {
            c.fail("4b: NOT increasing in nbar (largest reversal " + fmt(worst_gap) +
                   "); the quadrature follows the printed squeezed-thermal closed "
                   "form, which strictly decreases in nbar at fixed r, so this "
                   "clause contradicts the closed-form agreement gate above");
        }
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
}

// ---- criterion 5 ----

void criterion_5(Criterion& c) {
    try {
        double worst = 0.0;
        for (double r : {0.2, 0.4, 0.6, 0.8, 1.0})
            worst = std::max(worst, std::abs(nc_pas(1, r) - nc_sns(1, r)));
        c.note("PAS(1) vs SNS(1) across r: max gap = " + fmt(worst));
        if (worst > 1e-6) c.fail("PAS/SNS m=1 gap " + fmt(worst) + " > 1e-6");

        // Pythagorean identity against thermal references
        double pyth = 0.0;
        auto check_pyth = [&](const DensityOperator& rho) {
            const double ng = counterpart_thermal_occupation(moments(rho));
            const DensityOperator g = thermal(ng, rho.dim());
            for (double nb : {0.5, 2.0}) {
                const DensityOperator th = thermal(nb, rho.dim());
                const double lhs = relative_entropy(rho, th);
                const double rhs = relative_entropy(rho, g) + relative_entropy(g, th);
                pyth = std::max(pyth, std::abs(lhs - rhs));
            }
        };
        check_pyth(to_density(fock(1, 128)));
        check_pyth(to_density(fock(2, 128)));
        check_pyth(add_photons(thermal(1.0, 128), 1));
        c.note("relative-entropy identity residual: " + fmt(pyth));
        if (pyth > 5e-3) c.fail("identity residual " + fmt(pyth) + " > 5e-3");

        // Q normalization for the whole catalog
        std::vector<std::pair<std::string, State>> catalog;
        catalog.emplace_back("vacuum", pure_state([](int d) { return fock(0, d); }));
        catalog.emplace_back("coherent",
                             pure_state([](int d) { return coherent(cx(1.2, -0.5), d); }));
        catalog.emplace_back("fock4", pure_state([](int d) { return fock(4, d); }));
        catalog.emplace_back("squeezed-vacuum", pure_state([](int d) {
                                 return squeezed_coherent(SqueezeParam(0.8, 0.0), cx(0, 0), d);
                             }));
        catalog.emplace_back("squeezed-coherent", pure_state([](int d) {
                                 return squeezed_coherent(SqueezeParam(0.5, 1.1), cx(1, 0.3), d);
                             }));
        catalog.emplace_back("cat-even",
                             pure_state([](int d) { return cat_state(1.2, Parity::even, d); }));
        catalog.emplace_back("cat-odd",
                             pure_state([](int d) { return cat_state(1.2, Parity::odd, d); }));
        catalog.emplace_back("pac2", pure_state([](int d) {
                                 return add_photons(coherent(cx(1.5, 0), d), 2);
                             }));
        catalog.emplace_back("pas2", pure_state([](int d) {
                                 return photon_added_squeezed_vacuum(SqueezeParam(0.5, 0), 2, d);
                             }));
        catalog.emplace_back("sns3", pure_state([](int d) {
                                 return squeezed_number(SqueezeParam(0.5, 0), 3, d);
                             }));
        catalog.emplace_back("thermal2", mixed_state([](int d) { return thermal(2.0, d); }));
        catalog.emplace_back("pats2", mixed_state([](int d) {
                                 return add_photons(thermal(1.0, d), 2);
                             }));
        catalog.emplace_back("squeezed-thermal", mixed_state([](int d) {
                                 return squeezed_thermal(1.0, SqueezeParam(0.5, 0), d);
                             }));
        double qworst = 0.0;
        for (const auto& [name, s] : catalog) {
            const QuadratureRule rule = rule_for_state(s, 1e-6);
            const std::vector<double> q =
                std::visit([&](const auto& st) { return q_grid(st, rule); }, s);
            double mass = 0.0;
            for (size_t i = 0; i < rule.radial_nodes.size(); ++i) {
                const double w = rule.node_weight(i);
                for (int j = 0; j < rule.angular_count; ++j)
                    mass += w * q[i * rule.angular_count + j];
            }
            qworst = std::max(qworst, std::abs(mass - 1.0));
            if (std::abs(mass - 1.0) > 1e-6)
                c.fail("Q normalization off for " + name + ": " + fmt(mass - 1.0));
        }
        c.note("catalog Q normalization: max |mass - 1| = " + fmt(qworst));
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
}

// ---- criterion 6 ----

void criterion_6(Criterion& c, double elapsed_so_far) {
    try {
        VerifyOptions opt;
        const std::vector<CheckResult> checks = run_verify(opt);
        int failures = 0;
        for (const CheckResult& r : checks)
            if (!r.pass) {
                ++failures;
                c.fail("verify: " + r.name + ": " + r.detail);
            }
        c.note("verify suite: " + std::to_string(checks.size() - failures) + "/" +
               std::to_string(checks.size()) + " checks green at defaults");

        std::mt19937 rng(20240817);
        std::uniform_int_distribution<int> len(0, 48);
        std::uniform_int_distribution<int> byte(0, 255);
        const int kFuzz = 100000;
        for (int i = 0; i < kFuzz; ++i) {
            std::string s;
            const int n = len(rng);
            for (int j = 0; j < n; ++j) s.push_back(static_cast<char>(byte(rng)));
            try {
                dsl::parse(s);
            } catch (const ParseError&) {
                // structured failure is the accepted outcome
            }
        }
        c.note("parser fuzz: " + std::to_string(kFuzz) + " random byte strings, no crash");

        c.note("elapsed before runtime check: " + fmt(elapsed_so_far) + " s");
        if (elapsed_so_far > 120.0)
            c.fail("acceptance run exceeded two minutes");
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
}

}  // namespace

int main() {
    const auto t0 = clock_type::now();
    std::vector<Criterion> criteria(6);
    const char* titles[] = {"closed-form oracle agreement", "spot values",
                            "invariance suite", "qualitative figure reproduction",
                            "structural identities", "robustness"};
    for (int i = 0; i < 6; ++i) {
        criteria[i].id = i + 1;
        criteria[i].title = titles[i];
    }

    criterion_1(criteria[0]);
    criterion_2(criteria[1]);
    criterion_3(criteria[2]);
    criterion_4(criteria[3]);
    criterion_5(criteria[4]);
    const double elapsed = std::chrono::duration<double>(clock_type::now() - t0).count();
    criterion_6(criteria[5], elapsed);

    int failed = 0;
    for (const Criterion& c : criteria) {
        std::printf("[%s] criterion %d — %s\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str());
        for (const std::string& n : c.notes) std::printf("        %s\n", n.c_str());
        if (!c.pass) ++failed;
    }
    const double total = std::chrono::duration<double>(clock_type::now() - t0).count();
    std::printf("%d/6 criteria passed in %.1f s\n", 6 - failed, total);
    return failed == 0 ? 0 : 1;
}
