#include "ncw.h"

#include <cmath>
#include <cstring>
#include <string>

#include "ncw/dsl.hpp"
#include "ncw/gaussian.hpp"
#include "ncw/husimi.hpp"
#include "ncw/measure.hpp"
#include "ncw/quad.hpp"
#include "ncw/verify.hpp"

struct ncw_state {
    ncw::State v;
};

struct ncw_rule {
    ncw::QuadratureRule r;
};

namespace {

thread_local std::string tl_error;
thread_local size_t tl_offset = 0;

constexpr int kAutoBase = 64;
constexpr int kAutoCap = 8192;

void set_error(const std::string& msg, size_t offset = 0) {
    tl_error = msg;
    tl_offset = offset;
}

ncw_status map_code(ncw::errc c) {
    using ncw::errc;
    switch (c) {
        case errc::invalid_parameter: return NCW_ERR_INVALID_PARAMETER;
        case errc::dimension_too_small: return NCW_ERR_DIMENSION_TOO_SMALL;
        case errc::index_out_of_range: return NCW_ERR_INDEX_OUT_OF_RANGE;
        case errc::r_too_large: return NCW_ERR_R_TOO_LARGE;
        case errc::degenerate_input: return NCW_ERR_DEGENERATE_INPUT;
        case errc::uncertainty_violation: return NCW_ERR_UNCERTAINTY_VIOLATION;
        case errc::support_mismatch: return NCW_ERR_SUPPORT_MISMATCH;
        case errc::non_convergence: return NCW_ERR_NON_CONVERGENCE;
        case errc::syntax_error: return NCW_ERR_SYNTAX;
        case errc::eval_error: return NCW_ERR_EVAL;
        case errc::internal_check: return NCW_ERR_INTERNAL;
    }
    return NCW_ERR_INTERNAL;
}

template <typename F>
ncw_status guarded(F&& f) {
    try {
        f();
        set_error("");
        return NCW_OK;
    } catch (const ncw::ParseError& e) {
        set_error(e.what(), e.offset());
        return NCW_ERR_SYNTAX;
    } catch (const ncw::EvalError& e) {
        set_error(e.what(), e.begin());
        return map_code(e.code());
    } catch (const ncw::Error& e) {
        set_error(e.what());
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return NCW_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return NCW_ERR_INTERNAL;
    }
}

// Retries a state construction with doubling dimension when dim == 0;
// any other value (a forced dimension, or a negative sentinel used by the
// transforms, which ignore it) means a single attempt.
template <typename F>
ncw_status make_state(int dim, ncw_state** out, F&& construct) {
    if (!out) {
        set_error("null output pointer");
        return NCW_ERR_NULL_POINTER;
    }
    *out = nullptr;
    if (dim != 0)
        return guarded([&] { *out = new ncw_state{construct(dim)}; });

    ncw_status last = NCW_ERR_INTERNAL;
    for (int d = kAutoBase; d <= kAutoCap; d *= 2) {
        last = guarded([&] { *out = new ncw_state{construct(d)}; });
        if (last != NCW_ERR_DIMENSION_TOO_SMALL) return last;
    }
    return last;
}

}  // namespace

extern "C" {

const char* ncw_version(void) { return "0.1.0"; }

const char* ncw_status_name(ncw_status s) {
    switch (s) {
        case NCW_OK: return "ok";
        case NCW_ERR_INVALID_PARAMETER: return "invalid-parameter";
        case NCW_ERR_DIMENSION_TOO_SMALL: return "dimension-too-small";
        case NCW_ERR_INDEX_OUT_OF_RANGE: return "index-out-of-range";
        case NCW_ERR_R_TOO_LARGE: return "r-too-large";
        case NCW_ERR_DEGENERATE_INPUT: return "degenerate-input";
        case NCW_ERR_UNCERTAINTY_VIOLATION: return "uncertainty-violation";
        case NCW_ERR_SUPPORT_MISMATCH: return "support-mismatch";
        case NCW_ERR_NON_CONVERGENCE: return "non-convergence";
        case NCW_ERR_SYNTAX: return "syntax-error";
        case NCW_ERR_EVAL: return "eval-error";
        case NCW_ERR_NULL_POINTER: return "null-pointer";
        case NCW_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* ncw_last_error(void) { return tl_error.c_str(); }

size_t ncw_last_error_offset(void) { return tl_offset; }

ncw_status ncw_state_parse(const char* text, int dim, double tail_tol,
                           ncw_state** out) {
    if (!text) {
        set_error("null expression");
        return NCW_ERR_NULL_POINTER;
    }
    const double tt = tail_tol > 0.0 ? tail_tol : ncw::kDefaultTailTol;
    ncw::dsl::StateExpr expr;
    const ncw_status ps = guarded([&] { expr = ncw::dsl::parse(text); });
    if (ps != NCW_OK) return ps;
    return make_state(dim, out,
                      [&](int d) { return ncw::dsl::eval(expr, d, tt); });
}

ncw_status ncw_state_coherent(double re, double im, int dim, ncw_state** out) {
    return make_state(dim, out, [&](int d) {
        return ncw::State(ncw::coherent(ncw::cx(re, im), d));
    });
}

ncw_status ncw_state_fock(int m, int dim, ncw_state** out) {
    return make_state(dim, out, [&](int d) {
        if (dim == 0 && m >= d)
            throw ncw::Error(ncw::errc::dimension_too_small, "fock index above dim");
        return ncw::State(ncw::fock(m, d));
    });
}

ncw_status ncw_state_thermal(double nbar, int dim, ncw_state** out) {
    return make_state(dim, out,
                      [&](int d) { return ncw::State(ncw::thermal(nbar, d)); });
}

ncw_status ncw_state_squeezed_coherent(double r, double theta, double alpha_re,
                                       double alpha_im, int dim, ncw_state** out) {
    return make_state(dim, out, [&](int d) {
        return ncw::State(ncw::squeezed_coherent(ncw::SqueezeParam(r, theta),
                                                 ncw::cx(alpha_re, alpha_im), d));
    });
}

ncw_status ncw_state_squeezed_number(double r, double theta, int m, int dim,
                                     ncw_state** out) {
    return make_state(dim, out, [&](int d) {
        if (dim == 0 && m >= d)
            throw ncw::Error(ncw::errc::dimension_too_small, "fock index above dim");
        return ncw::State(ncw::squeezed_number(ncw::SqueezeParam(r, theta), m, d));
    });
}

ncw_status ncw_state_photon_added_squeezed_vacuum(double r, double theta, int m,
                                                  int dim, ncw_state** out) {
    return make_state(dim, out, [&](int d) {
        return ncw::State(
            ncw::photon_added_squeezed_vacuum(ncw::SqueezeParam(r, theta), m, d));
    });
}

ncw_status ncw_state_cat(double amplitude, int odd_parity, int dim,
                         ncw_state** out) {
    return make_state(dim, out, [&](int d) {
        return ncw::State(ncw::cat_state(
            amplitude, odd_parity ? ncw::Parity::odd : ncw::Parity::even, d));
    });
}

ncw_status ncw_state_squeezed_thermal(double nbar, double r, double theta, int dim,
                                      ncw_state** out) {
    return make_state(dim, out, [&](int d) {
        return ncw::State(
            ncw::squeezed_thermal(nbar, ncw::SqueezeParam(r, theta), d));
    });
}

ncw_status ncw_state_add_photons(const ncw_state* in, int m, ncw_state** out) {
    if (!in) {
        set_error("null state");
        return NCW_ERR_NULL_POINTER;
    }
    return make_state(-1, out, [&](int) {
        return std::visit(
            [&](const auto& s) { return ncw::State(ncw::add_photons(s, m)); },
            in->v);
    });
}

ncw_status ncw_state_displace(const ncw_state* in, double re, double im,
                              ncw_state** out) {
    if (!in) {
        set_error("null state");
        return NCW_ERR_NULL_POINTER;
    }
    return make_state(-1, out, [&](int) {
        return std::visit(
            [&](const auto& s) {
                return ncw::State(ncw::displace(s, ncw::cx(re, im)));
            },
            in->v);
    });
}

ncw_status ncw_state_rotate(const ncw_state* in, double phi, ncw_state** out) {
    if (!in) {
        set_error("null state");
        return NCW_ERR_NULL_POINTER;
    }
    return make_state(-1, out, [&](int) {
        return std::visit(
            [&](const auto& s) { return ncw::State(ncw::rotate(s, phi)); }, in->v);
    });
}

void ncw_state_free(ncw_state* s) { delete s; }

int ncw_state_dim(const ncw_state* s) {
    if (!s) return 0;
    return std::visit([](const auto& st) { return st.dim(); }, s->v);
}

int ncw_state_is_vector(const ncw_state* s) {
    return s && std::holds_alternative<ncw::FockVector>(s->v) ? 1 : 0;
}

double ncw_state_tail_mass(const ncw_state* s) {
    if (!s) return 0.0;
    return std::visit([](const auto& st) { return st.tail_mass(); }, s->v);
}

double ncw_state_purity(const ncw_state* s) {
    if (!s) return 0.0;
    if (std::holds_alternative<ncw::FockVector>(s->v)) return 1.0;
    return ncw::purity(std::get<ncw::DensityOperator>(s->v));
}

double ncw_state_mean_photon(const ncw_state* s) {
    if (!s) return 0.0;
    return std::visit([](const auto& st) { return ncw::mean_photon(st); }, s->v);
}

ncw_status ncw_state_moments(const ncw_state* s, double out_mean[2],
                             double out_cov[3]) {
    if (!s || !out_mean || !out_cov) {
        set_error("null argument");
        return NCW_ERR_NULL_POINTER;
    }
    return guarded([&] {
        const ncw::GaussianMoments g =
            std::visit([](const auto& st) { return ncw::moments(st); }, s->v);
        out_mean[0] = g.mean[0];
        out_mean[1] = g.mean[1];
        out_cov[0] = g.cov[0][0];
        out_cov[1] = g.cov[0][1];
        out_cov[2] = g.cov[1][1];
    });
}

ncw_status ncw_state_amplitude(const ncw_state* s, int n, double* re, double* im) {
    if (!s || !re || !im) {
        set_error("null argument");
        return NCW_ERR_NULL_POINTER;
    }
    return guarded([&] {
        if (!std::holds_alternative<ncw::FockVector>(s->v))
            throw ncw::Error(ncw::errc::invalid_parameter,
                             "amplitudes exist only for pure state vectors");
        const ncw::FockVector& v = std::get<ncw::FockVector>(s->v);
        if (n < 0 || n >= v.dim())
            throw ncw::Error(ncw::errc::index_out_of_range, "amplitude index");
        *re = v.amplitude(n).real();
        *im = v.amplitude(n).imag();
    });
}

ncw_status ncw_rule_build(double energy_scale, double tol, ncw_rule** out) {
    if (!out) {
        set_error("null output pointer");
        return NCW_ERR_NULL_POINTER;
    }
    *out = nullptr;
    return guarded([&] { *out = new ncw_rule{ncw::build_rule(energy_scale, tol)}; });
}

ncw_status ncw_rule_for_state(const ncw_state* s, double tol, ncw_rule** out) {
    if (!s || !out) {
        set_error("null argument");
        return NCW_ERR_NULL_POINTER;
    }
    *out = nullptr;
    return guarded([&] { *out = new ncw_rule{ncw::rule_for_state(s->v, tol)}; });
}

void ncw_rule_free(ncw_rule* r) { delete r; }

int ncw_rule_radial_count(const ncw_rule* r) {
    return r ? static_cast<int>(r->r.radial_nodes.size()) : 0;
}

int ncw_rule_angular_count(const ncw_rule* r) {
    return r ? r->r.angular_count : 0;
}

double ncw_rule_radius(const ncw_rule* r) { return r ? r->r.r_max : 0.0; }

ncw_status ncw_wehrl_entropy(const ncw_state* s, const ncw_rule* r, double* h,
                             double* refinement_delta) {
    if (!s || !r || !h) {
        set_error("null argument");
        return NCW_ERR_NULL_POINTER;
    }
    return guarded([&] {
        const ncw::WehrlResult w = std::visit(
            [&](const auto& st) { return ncw::wehrl_entropy(st, r->r); }, s->v);
        *h = w.value;
        if (refinement_delta) *refinement_delta = w.refinement_delta;
    });
}

ncw_status ncw_q_value(const ncw_state* s, double alpha_re, double alpha_im,
                       double* q) {
    if (!s || !q) {
        set_error("null argument");
        return NCW_ERR_NULL_POINTER;
    }
    return guarded([&] {
        *q = std::visit(
            [&](const auto& st) {
                return ncw::q_value(st, ncw::cx(alpha_re, alpha_im));
            },
            s->v);
    });
}

ncw_status ncw_nc(const ncw_state* s, const ncw_rule* r, ncw_nc_result* out) {
    if (!s || !r || !out) {
        set_error("null argument");
        return NCW_ERR_NULL_POINTER;
    }
    return guarded([&] {
        const ncw::NcResult res = ncw::nc(s->v, r->r);
        out->wehrl = res.wehrl;
        out->reference_entropy = res.reference_entropy;
        out->value = res.value;
        out->branch_mixed = res.branch == ncw::Branch::mixed ? 1 : 0;
        out->nbar_ref = res.nbar_ref;
        out->tail_mass = res.diagnostics.tail_mass;
        out->convergence_delta = res.diagnostics.convergence_delta;
        out->neg_q_clamp = res.diagnostics.neg_q_clamp;
        out->value_clamp = res.diagnostics.value_clamp;
        out->nbar_clamp = res.diagnostics.nbar_clamp;
    });
}

double ncw_closed_form_fock(int m) {
    double v = std::nan("");
    guarded([&] { v = ncw::closed_form_fock(m); });
    return v;
}

double ncw_closed_form_squeezed(double r) {
    double v = std::nan("");
    guarded([&] { v = ncw::closed_form_squeezed(r); });
    return v;
}

double ncw_closed_form_pats(int m) {
    double v = std::nan("");
    guarded([&] { v = ncw::closed_form_pats(m); });
    return v;
}

double ncw_closed_form_squeezed_thermal(double nbar, double r) {
    double v = std::nan("");
    guarded([&] { v = ncw::closed_form_squeezed_thermal(nbar, r); });
    return v;
}

ncw_status ncw_verify_run(int dim, double tol, ncw_verify_cb cb, void* user,
                          int* out_failures) {
    return guarded([&] {
        ncw::VerifyOptions opt;
        opt.dim = dim;
        opt.tol = tol > 0.0 ? tol : 1e-6;
        const std::vector<ncw::CheckResult> checks = ncw::run_verify(opt);
        int failures = 0;
        for (const ncw::CheckResult& c : checks) {
            if (!c.pass) ++failures;
            if (cb) cb(c.name.c_str(), c.pass ? 1 : 0, c.detail.c_str(), user);
        }
        if (out_failures) *out_failures = failures;
    });
}

}  // extern "C"
