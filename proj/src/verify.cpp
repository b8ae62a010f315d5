#include "ncw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ncw/gaussian.hpp"
#include "ncw/husimi.hpp"
#include "ncw/measure.hpp"
#include "ncw/quad.hpp"
#include "ncw/special.hpp"

namespace ncw {

namespace {

constexpr int kDimCap = 8192;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Runs a state-producing construction at increasing dims until the tail
// fits; a forced dim is used verbatim so truncation failures surface.
template <typename F>
auto with_dim(const VerifyOptions& opt, int base, F&& make) {
    if (opt.dim > 0) return make(opt.dim);
    int dim = std::max(base, kDefaultDim);
    for (;;) {
        try {
            return make(dim);
        } catch (const Error& e) {
            if (e.code() != errc::dimension_too_small || dim >= kDimCap) throw;
            dim *= 2;
        }
    }
}

struct Harness {
    const VerifyOptions& opt;
    std::vector<CheckResult> results;

    void check(const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = body();
            r.pass = true;
        } catch (const Error& e) {
            r.pass = false;
            r.detail = std::string(errc_name(e.code())) + ": " + e.what();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }

    [[noreturn]] static void fail(const std::string& msg) {
        throw Error(errc::internal_check, msg);
    }

    double nc_of(const State& s) const {
        const QuadratureRule rule = rule_for_state(s, opt.tol);
        return nc(s, rule).value;
    }

    State make_pure(int base, const std::function<FockVector(int)>& f) const {
        return with_dim(opt, base, [&](int d) { return State(f(d)); });
    }
    State make_mixed(int base, const std::function<DensityOperator(int)>& f) const {
        return with_dim(opt, base, [&](int d) { return State(f(d)); });
    }
};

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
    Harness h{opt, {}};
    const double tol = opt.tol;

    h.check("oracle/fock", [&] {
        double worst = 0.0;
        for (int m = 0; m <= 5; ++m) {
            const State s = h.make_pure(64, [&](int d) { return fock(m, d); });
            worst = std::max(worst, std::abs(h.nc_of(s) - closed_form_fock(m)));
        }
        if (worst > 1e-4) Harness::fail("max closed-form error " + fmt(worst));
        return "max |err| = " + fmt(worst) + " over m in 0..5";
    });

    h.check("oracle/squeezed-vacuum", [&] {
        double worst = 0.0;
        for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const State s = h.make_pure(64, [&](int d) {
                return squeezed_coherent(SqueezeParam(r, 0.0), cx(0, 0), d);
            });
            worst = std::max(worst, std::abs(h.nc_of(s) - closed_form_squeezed(r)));
        }
        if (worst > 1e-4) Harness::fail("max closed-form error " + fmt(worst));
        return "max |err| = " + fmt(worst) + " over r in {0..1}";
    });

    h.check("oracle/photon-added-thermal", [&] {
        double worst = 0.0;
        for (int m = 1; m <= 5; ++m) {
            const State s = h.make_mixed(64, [&](int d) {
                return add_photons(thermal(1.0, d), m);
            });
            worst = std::max(worst, std::abs(h.nc_of(s) - closed_form_pats(m)));
        }
        if (worst > 1e-4) Harness::fail("max closed-form error " + fmt(worst));
        return "max |err| = " + fmt(worst) + " over m in 1..5 at nbar=1";
    });

    h.check("oracle/squeezed-thermal", [&] {
        double worst = 0.0;
        for (double nbar : {0.5, 1.0, 2.0, 3.0}) {
            for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const State s = h.make_mixed(64, [&](int d) {
                    return squeezed_thermal(nbar, SqueezeParam(r, 0.0), d);
                });
                worst = std::max(
                    worst, std::abs(h.nc_of(s) - closed_form_squeezed_thermal(nbar, r)));
            }
        }
        if (worst > 1e-4) Harness::fail("max closed-form error " + fmt(worst));
        return "max |err| = " + fmt(worst) + " over r x nbar grid";
    });

    h.check("invariance/displacement", [&] {
        double worst = 0.0;
        for (const cx beta : {cx(1.2, 0.0), cx(0.0, 2.0), cx(-0.7, 1.1)}) {
            const State base = h.make_pure(64, [&](int d) { return fock(1, d); });
            const State moved = h.make_pure(64, [&](int d) {
                return displace(fock(1, d), beta);
            });
            worst = std::max(worst, std::abs(h.nc_of(base) - h.nc_of(moved)));

            const State sq = h.make_pure(64, [&](int d) {
                return squeezed_coherent(SqueezeParam(0.5, 0.0), cx(0, 0), d);
            });
            const State sq_moved = h.make_pure(64, [&](int d) {
                return displace(squeezed_coherent(SqueezeParam(0.5, 0.0), cx(0, 0), d), beta);
            });
            worst = std::max(worst, std::abs(h.nc_of(sq) - h.nc_of(sq_moved)));
        }
        if (worst > 2.0 * tol) Harness::fail("max displacement drift " + fmt(worst));
        return "max |drift| = " + fmt(worst) + " for |beta| <= 2";
    });

    h.check("invariance/rotation", [&] {
        double worst = 0.0;
        for (double phi : {0.37, M_PI / 3.0, 2.1}) {
            const State base = h.make_pure(64, [&](int d) {
                return cat_state(1.0, Parity::even, d);
            });
            const State rot = h.make_pure(64, [&](int d) {
                return rotate(cat_state(1.0, Parity::even, d), phi);
            });
            worst = std::max(worst, std::abs(h.nc_of(base) - h.nc_of(rot)));
        }
        if (worst > 2.0 * tol) Harness::fail("max rotation drift " + fmt(worst));
        return "max |drift| = " + fmt(worst);
    });

    h.check("invariance/rotation-node-permutation", [&] {
        // Rotation by one angular step permutes grid nodes; H_w matches to
        // machine level.
        const State s = h.make_pure(64, [&](int d) {
            return squeezed_coherent(SqueezeParam(0.5, 0.0), cx(0, 0), d);
        });
        const QuadratureRule rule = rule_for_state(s, tol);
        const double phi = 2.0 * M_PI / rule.angular_count;
        const FockVector& psi = std::get<FockVector>(s);
        const double a = wehrl_entropy(psi, rule).value;
        const double b = wehrl_entropy(rotate(psi, phi), rule).value;
        if (std::abs(a - b) > 1e-12) Harness::fail("drift " + fmt(std::abs(a - b)));
        return "|drift| = " + fmt(std::abs(a - b)) + " (exact node permutation)";
    });

    h.check("invariance/squeeze-angle-and-displacement", [&] {
        double worst = 0.0;
        const double want = closed_form_squeezed(0.5);
        for (double theta : {0.0, 0.9, 2.2}) {
            for (const cx alpha : {cx(0.0, 0.0), cx(1.0, 0.5)}) {
                const State s = h.make_pure(64, [&](int d) {
                    return squeezed_coherent(SqueezeParam(0.5, theta), alpha, d);
                });
                worst = std::max(worst, std::abs(h.nc_of(s) - want));
            }
        }
        if (worst > 2.0 * tol) Harness::fail("max drift " + fmt(worst));
        return "max |N_w - ln cosh 0.5| = " + fmt(worst) + " over theta, alpha";
    });

    h.check("cat/parity-ordering", [&] {
        // Odd kittens carry more nonclassicality; the gap collapses as the
        // lobes separate (measured: 0.28 at R=1, 0.038 at R=1.5, 0.0016 at
        // R=2 — the two parities meet only past R ~ 1.6).
        auto gap_at = [&](double R) {
            const double odd = h.nc_of(h.make_pure(64, [&](int d) {
                return cat_state(R, Parity::odd, d);
            }));
            const double even = h.nc_of(h.make_pure(64, [&](int d) {
                return cat_state(R, Parity::even, d);
            }));
            return odd - even;
        };
        for (double R : {0.3, 0.5, 0.8})
            if (!(gap_at(R) > 0.0)) Harness::fail("odd !> even at R=" + fmt(R));
        const double g08 = gap_at(0.8);
        const double g15 = gap_at(1.5);
        const double g20 = gap_at(2.0);
        if (!(g15 < g08 / 3.0) || !(std::abs(g20) < 0.02))
            Harness::fail("gap not collapsing: " + fmt(g08) + " -> " + fmt(g15) +
                          " -> " + fmt(g20));
        return "odd > even for R <= 0.8; gap " + fmt(g08) + " -> " + fmt(g15) +
               " -> " + fmt(g20) + " at R = 0.8, 1.5, 2";
    });

    h.check("pas-sns/m1-coincidence", [&] {
        double worst = 0.0;
        for (double r : {0.2, 0.6, 1.0}) {
            const double pas = h.nc_of(h.make_pure(64, [&](int d) {
                return photon_added_squeezed_vacuum(SqueezeParam(r, 0.0), 1, d);
            }));
            const double sns = h.nc_of(h.make_pure(64, [&](int d) {
                return squeezed_number(SqueezeParam(r, 0.0), 1, d);
            }));
            worst = std::max(worst, std::abs(pas - sns));
        }
        if (worst > 1e-6) Harness::fail("max |PAS - SNS| = " + fmt(worst));
        return "max |PAS - SNS| = " + fmt(worst) + " at m=1";
    });

    h.check("sns/monotone-in-r-and-m", [&] {
        const std::vector<double> rs = {0.0, 0.25, 0.5, 0.75, 1.0};
        std::vector<std::vector<double>> v(6, std::vector<double>(rs.size()));
        for (int m = 1; m <= 5; ++m)
            for (size_t i = 0; i < rs.size(); ++i)
                v[m][i] = h.nc_of(h.make_pure(64, [&](int d) {
                    return squeezed_number(SqueezeParam(rs[i], 0.0), m, d);
                }));
        for (int m = 1; m <= 5; ++m)
            for (size_t i = 0; i + 1 < rs.size(); ++i)
                if (!(v[m][i + 1] > v[m][i] - 1e-8))
                    Harness::fail("not increasing in r at m=" + std::to_string(m));
        for (int m = 1; m < 5; ++m)
            for (size_t i = 0; i < rs.size(); ++i)
                if (!(v[m + 1][i] > v[m][i] - 1e-8))
                    Harness::fail("not increasing in m at r=" + fmt(rs[i]));
        return "N_w increasing in both r and m on the grid";
    });

    h.check("pas/non-monotone-in-r", [&] {
        for (int m = 2; m <= 5; ++m) {
            std::vector<double> vals;
            for (double r = 0.0; r <= 1.0001; r += 0.1)
                vals.push_back(h.nc_of(h.make_pure(64, [&](int d) {
                    return photon_added_squeezed_vacuum(SqueezeParam(r, 0.0), m, d);
                })));
            bool dips = false, rises = false;
            for (size_t i = 0; i + 1 < vals.size(); ++i) {
                if (vals[i + 1] < vals[i] - 1e-5) dips = true;
                if (dips && vals[i + 1] > vals[i] + 1e-5) rises = true;
            }
            if (!dips || !rises)
                Harness::fail("no dip-then-rise at m=" + std::to_string(m));
        }
        return "N_w first decreases then increases for m in 2..5";
    });

    h.check("pats/nbar-independence", [&] {
        double worst = 0.0;
        for (int m : {1, 3}) {
            std::vector<double> vals;
            for (double nbar : {0.5, 1.0, 2.0})
                vals.push_back(h.nc_of(h.make_mixed(64, [&](int d) {
                    return add_photons(thermal(nbar, d), m);
                })));
            const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
            worst = std::max(worst, *hi - *lo);
        }
        if (worst > 1e-4) Harness::fail("spread across nbar = " + fmt(worst));
        return "max spread across nbar = " + fmt(worst);
    });

    h.check("squeezed-thermal/detects-all-r", [&] {
        double smallest = 1e300;
        for (double r : {0.05, 0.1, 0.5, 1.0}) {
            for (double nbar : {1.0, 2.0, 3.0, 4.0, 5.0}) {
                const double v = h.nc_of(h.make_mixed(64, [&](int d) {
                    return squeezed_thermal(nbar, SqueezeParam(r, 0.0), d);
                }));
                smallest = std::min(smallest, v);
                if (!(v > 5e-5))
                    Harness::fail("N_w = " + fmt(v) + " at r=" + fmt(r) +
                                  ", nbar=" + fmt(nbar));
            }
        }
        return "min N_w = " + fmt(smallest) + " over r >= 0.05, nbar <= 5";
    });

    h.check("pac/limits", [&] {
        for (int m = 1; m <= 3; ++m) {
            const double v = h.nc_of(h.make_pure(64, [&](int d) {
                return add_photons(coherent(cx(1e-3, 0.0), d), m);
            }));
            if (std::abs(v - closed_form_fock(m)) > 1e-4)
                Harness::fail("R->0 limit off by " +
                              fmt(std::abs(v - closed_form_fock(m))) +
                              " at m=" + std::to_string(m));
        }
        std::vector<double> along_r;
        for (double R : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0})
            along_r.push_back(h.nc_of(h.make_pure(64, [&](int d) {
                return R == 0.0 ? fock(2, d) : add_photons(coherent(cx(R, 0.0), d), 2);
            })));
        for (size_t i = 0; i + 1 < along_r.size(); ++i)
            if (!(along_r[i + 1] < along_r[i] + 1e-6))
                Harness::fail("not decreasing in R at step " + std::to_string(i));

        auto spread_at = [&](double R) {
            double lo = 1e300, hi = -1e300;
            for (int m = 1; m <= 5; ++m) {
                const double v =
                    R == 0.0 ? closed_form_fock(m)
                             : h.nc_of(h.make_pure(64, [&](int d) {
                                   return add_photons(coherent(cx(R, 0.0), d), m);
                               }));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            return hi - lo;
        };
        const double s0 = spread_at(0.0), s3 = spread_at(3.0);
        if (!(s3 < 0.2 * s0))
            Harness::fail("m-spread at R=3 is " + fmt(s3) + " vs " + fmt(s0) +
                          " at R=0");
        return "R->0 limits ok; decreasing in R; spread(R=3)/spread(0) = " +
               fmt(s3 / s0);
    });

    h.check("q/normalization-and-bound", [&] {
        std::vector<std::pair<std::string, State>> catalog;
        catalog.emplace_back("vacuum", h.make_pure(64, [&](int d) { return fock(0, d); }));
        catalog.emplace_back("coherent", h.make_pure(64, [&](int d) {
            return coherent(cx(1.3, 0.4), d);
        }));
        catalog.emplace_back("fock3", h.make_pure(64, [&](int d) { return fock(3, d); }));
        catalog.emplace_back("squeezed", h.make_pure(64, [&](int d) {
            return squeezed_coherent(SqueezeParam(0.8, 0.0), cx(0, 0), d);
        }));
        catalog.emplace_back("cat+", h.make_pure(64, [&](int d) {
            return cat_state(1.2, Parity::even, d);
        }));
        catalog.emplace_back("cat-", h.make_pure(64, [&](int d) {
            return cat_state(1.2, Parity::odd, d);
        }));
        catalog.emplace_back("pas2", h.make_pure(64, [&](int d) {
            return photon_added_squeezed_vacuum(SqueezeParam(0.5, 0.0), 2, d);
        }));
        catalog.emplace_back("sns3", h.make_pure(64, [&](int d) {
            return squeezed_number(SqueezeParam(0.5, 0.0), 3, d);
        }));
        catalog.emplace_back("thermal2", h.make_mixed(64, [&](int d) {
            return thermal(2.0, d);
        }));
        catalog.emplace_back("pats2", h.make_mixed(64, [&](int d) {
            return add_photons(thermal(1.0, d), 2);
        }));
        catalog.emplace_back("st", h.make_mixed(64, [&](int d) {
            return squeezed_thermal(1.0, SqueezeParam(0.5, 0.0), d);
        }));

        double worst = 0.0;
        for (const auto& [name, s] : catalog) {
            const QuadratureRule rule = rule_for_state(s, tol);
            const std::vector<double> q = std::visit(
                [&](const auto& st) { return q_grid(st, rule); }, s);
            double mass = 0.0;
            double qmax = 0.0;
            for (size_t i = 0; i < rule.radial_nodes.size(); ++i) {
                const double w = rule.node_weight(i);
                for (int j = 0; j < rule.angular_count; ++j) {
                    const double qv = q[i * rule.angular_count + j];
                    mass += w * qv;
                    qmax = std::max(qmax, qv);
                }
            }
            if (qmax > 1.0 / M_PI + 1e-12)
                Harness::fail(name + ": Q exceeds 1/pi by " + fmt(qmax - 1.0 / M_PI));
            worst = std::max(worst, std::abs(mass - 1.0));
            if (std::abs(mass - 1.0) > tol)
                Harness::fail(name + ": integral Q = " + fmt(mass));
        }
        return "max |integral Q - 1| = " + fmt(worst) + " over the catalog";
    });

    h.check("wehrl/minimum", [&] {
        double lowest = 1e300;
        for (int m : {0, 1, 3}) {
            const State s = h.make_pure(64, [&](int d) { return fock(m, d); });
            const QuadratureRule rule = rule_for_state(s, tol);
            lowest = std::min(lowest,
                              wehrl_entropy(std::get<FockVector>(s), rule).value);
        }
        const State th = h.make_mixed(64, [&](int d) { return thermal(0.5, d); });
        lowest = std::min(lowest, wehrl_entropy(std::get<DensityOperator>(th),
                                                rule_for_state(th, tol)).value);
        if (!(lowest >= 1.0 - tol)) Harness::fail("H_w = " + fmt(lowest) + " < 1");
        return "min H_w = " + fmt(lowest) + " >= 1 - tol";
    });

    return h.results;
}

}  // namespace ncw
