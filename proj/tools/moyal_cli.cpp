// Command-line front end: sequence calculus, sampling, norms, star products,
// multiplier experiments, quantization, and the verify property-suite runner.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "moyalkit/analytic.hpp"
#include "moyalkit/errors.hpp"
#include "moyalkit/grid.hpp"
#include "moyalkit/multipliers.hpp"
#include "moyalkit/norms.hpp"
#include "moyalkit/quantize.hpp"
#include "moyalkit/report.hpp"
#include "moyalkit/sequences.hpp"
#include "moyalkit/star.hpp"
#include "moyalkit/verify.hpp"

namespace mk = moyalkit;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-")
        std::cout << text << std::endl;
    else
        mk::write_text_file(out_path, text + "\n");
}

struct SeqFlags {
    double gevrey = -1.0;
    bool constant_one = false;
    std::string file;
    int n_max = 64;

    void attach(CLI::App* cmd, const std::string& suffix = "") {
        cmd->add_option("--gevrey" + suffix, gevrey,
                        "gevrey order alpha (a_n = n^{alpha n})");
        cmd->add_flag("--constant-one" + suffix, constant_one,
                      "all-ones sequence");
        cmd->add_option("--seq" + suffix, file, "sequence JSON document");
        cmd->add_option("--n-max" + suffix, n_max, "index range (default 64)");
    }

    mk::DefiningSequence build() const {
        if (!file.empty()) {
            std::ifstream is(file);
            if (!is) throw mk::IoError("cannot open " + file);
            std::stringstream ss;
            ss << is.rdbuf();
            return mk::sequence_from_json(ss.str());
        }
        if (constant_one)
            return mk::make_sequence(mk::SeqKind::constant_one, 0.0, n_max);
        if (gevrey >= 0.0)
            return mk::make_sequence(mk::SeqKind::gevrey, gevrey, n_max);
        throw mk::UsageError("choose --gevrey, --constant-one or --seq");
    }
};

std::vector<double> parse_matrix_csv(const std::string& path, int dim) {
    std::ifstream is(path);
    if (!is) throw mk::IoError("cannot open " + path);
    std::vector<double> vals;
    std::string line;
    while (std::getline(is, line)) {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            if (!cell.empty()) vals.push_back(std::stod(cell));
    }
    if (static_cast<int>(vals.size()) != dim * dim)
        throw mk::UsageError("matrix file must hold " + std::to_string(dim) +
                             "x" + std::to_string(dim) + " entries");
    return vals;
}

mk::GridSpec parse_grid(const std::string& text, double half_width) {
    mk::GridSpec spec;
    spec.half_width = half_width;
    auto x = text.find('x');
    if (x == std::string::npos) {
        spec.dim = 2;
        spec.n = std::stoi(text);
    } else {
        spec.dim = 2;
        int a = std::stoi(text.substr(0, x));
        int b = std::stoi(text.substr(x + 1));
        if (a != b) throw mk::UsageError("grid must be square (NxN)");
        spec.n = a;
    }
    return spec;
}

int exit_code(const mk::Error& e) {
    switch (e.category()) {
        case mk::ErrorCategory::usage: return 1;
        case mk::ErrorCategory::validation: return 2;
        case mk::ErrorCategory::numerical_guard: return 3;
        case mk::ErrorCategory::io: return 2;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"moyalkit: numerical star products, Gelfand-Shilov norms and "
                 "quantization maps on phase-space grids"};
    app.require_subcommand(1);
    std::function<void()> action;

    // ------------------------------------------------------------------ seq
    auto* seq_cmd = app.add_subcommand("seq", "build and validate a defining sequence");
    auto seq_flags = std::make_shared<SeqFlags>();
    seq_flags->attach(seq_cmd);
    auto seq_out = std::make_shared<std::string>();
    seq_cmd->add_option("--out", *seq_out, "output path (default stdout)");
    seq_cmd->callback([seq_flags, seq_out, &action] {
        action = [=] {
            mk::DefiningSequence seq = seq_flags->build();
            emit(mk::sequence_to_json(seq), *seq_out);
        };
    });

    // --------------------------------------------------------------- weight
    auto* w_cmd = app.add_subcommand("weight", "evaluate the weight function w_a");
    auto w_flags = std::make_shared<SeqFlags>();
    w_flags->attach(w_cmd);
    auto w_t = std::make_shared<std::vector<double>>();
    auto w_check = std::make_shared<bool>(false);
    auto w_out = std::make_shared<std::string>();
    w_cmd->add_option("--t", *w_t, "argument values")->required();
    w_cmd->add_flag("--check", *w_check, "also run the inequality battery");
    w_cmd->add_option("--out", *w_out, "output path");
    w_cmd->callback([w_flags, w_t, w_check, w_out, &action] {
        action = [=] {
            mk::DefiningSequence seq = w_flags->build();
            mk::JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.field("kind", mk::to_string(seq.kind));
            w.key("evaluations").begin_array();
            for (double t : *w_t) {
                mk::WeightEvaluation ev = mk::weight(seq, t);
                w.begin_object();
                w.field("t", t);
                w.field("value", ev.value());
                w.field("log_value", ev.log_value);
                w.field("infinite", ev.infinite);
                w.key("argmax_n").value(ev.argmax_n);
                w.end_object();
            }
            w.end_array();
            if (*w_check) {
                mk::WeightInequalityReport rep =
                    mk::check_weight_inequalities(seq, *w_t);
                w.key("inequalities").begin_object();
                w.field("pass", rep.pass);
                w.key("checks").value(rep.checks);
                w.key("violations").value(rep.violations);
                w.field("margin_split", rep.margin_split);
                w.field("margin_midpoint", rep.margin_midpoint);
                w.field("margin_square", rep.margin_square);
                w.field("margin_moment", rep.margin_moment);
                w.end_object();
            }
            w.end_object();
            emit(w.str(), *w_out);
        };
    });

    // --------------------------------------------------------------- sample
    auto* s_cmd = app.add_subcommand("sample", "sample a closed-form family onto a grid");
    struct SampleOpts {
        std::string family = "gaussian";
        int dim = 2;
        int n = 128;
        double half_width = 12.0;
        std::vector<double> center{0.0, 0.0};
        double lambda = 1.0;
        double amp_re = 1.0, amp_im = 0.0;
        int hermite_k = 0;
        double hbar = 1.0;
        std::vector<double> q_matrix;
        std::string out;
        std::string csv;
    };
    auto so = std::make_shared<SampleOpts>();
    s_cmd->add_option("--family", so->family,
                      "gaussian | hermite | chirp | oscillator");
    s_cmd->add_option("--dim", so->dim, "1 or 2");
    s_cmd->add_option("--n", so->n, "samples per axis");
    s_cmd->add_option("--L", so->half_width, "box half-width");
    s_cmd->add_option("--center", so->center, "gaussian center");
    s_cmd->add_option("--lambda", so->lambda, "gaussian decay rate");
    s_cmd->add_option("--amp-re", so->amp_re, "amplitude (real part)");
    s_cmd->add_option("--amp-im", so->amp_im, "amplitude (imag part)");
    s_cmd->add_option("--k", so->hermite_k, "hermite index");
    s_cmd->add_option("--hbar", so->hbar, "hermite/chirp scale");
    s_cmd->add_option("--Q", so->q_matrix, "chirp matrix entries, row-major");
    s_cmd->add_option("--out", so->out, "GSGF output path")->required();
    s_cmd->add_option("--csv", so->csv, "optional CSV export path");
    s_cmd->callback([so, &action] {
        action = [=] {
            mk::GridSpec spec{so->dim, so->n, so->half_width};
            mk::AnalyticFunction fn;
            if (so->family == "gaussian") {
                std::vector<double> c(so->center.begin(),
                                      so->center.begin() + so->dim);
                fn = mk::isotropic_gaussian(so->dim,
                                            mk::cxd(so->amp_re, so->amp_im), c,
                                            so->lambda);
            } else if (so->family == "hermite") {
                fn = mk::hermite_function(so->hermite_k, so->hbar);
            } else if (so->family == "chirp") {
                std::vector<double> q = so->q_matrix;
                if (q.empty())
                    q = {0.0, 1.0 / so->hbar, 1.0 / so->hbar, 0.0};
                fn = mk::chirp(so->dim, q);
            } else if (so->family == "oscillator") {
                fn = mk::polynomial(
                    2, {mk::Monomial{{2, 0}, mk::cxd(0.5, 0.0)},
                        mk::Monomial{{0, 2}, mk::cxd(0.5, 0.0)}});
            } else {
                throw mk::UnsupportedFamily("unknown family " + so->family);
            }
            mk::GridFunction f = mk::sample(fn, spec);
            mk::write_gsgf(f, so->out);
            if (!so->csv.empty()) mk::write_csv(f, so->csv);
        };
    });

    // ----------------------------------------------------------------- norm
    auto* n_cmd = app.add_subcommand("norm", "evaluate a truncated norm estimator");
    auto na = std::make_shared<SeqFlags>();
    auto nb = std::make_shared<SeqFlags>();
    na->attach(n_cmd, "-a");
    nb->attach(n_cmd, "-b");
    struct NormOpts {
        std::string kind = "gs";
        double A = 1.0, B = 1.0;
        int M = 2;
        std::string input, out;
    };
    auto no = std::make_shared<NormOpts>();
    n_cmd->add_option("--kind", no->kind, "gs | e | moment");
    n_cmd->add_option("--A", no->A, "decay constant");
    n_cmd->add_option("--B", no->B, "smoothness constant");
    n_cmd->add_option("--M", no->M, "derivative order cap");
    n_cmd->add_option("input", no->input, "GSGF file")->required();
    n_cmd->add_option("--out", no->out, "output path");
    n_cmd->callback([na, nb, no, &action] {
        action = [=] {
            mk::GridFunction f = mk::read_gsgf(no->input);
            mk::DefiningSequence a = na->build();
            mk::DefiningSequence b = nb->build();
            mk::NormReport rep;
            if (no->kind == "gs")
                rep = mk::gs_norm(f, a, b, no->A, no->B, no->M);
            else if (no->kind == "e")
                rep = mk::e_norm(f, a, b, no->A, no->B, no->M);
            else if (no->kind == "moment")
                rep = mk::gs_norm_moment(f, a, b, no->A, no->B, no->M);
            else
                throw mk::UsageError("unknown norm kind " + no->kind);
            mk::JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.field("kind", no->kind);
            w.field("A", rep.A);
            w.field("B", rep.B);
            w.key("M").value(rep.M);
            w.field("value", rep.value);
            w.field("log_value", rep.log_value);
            w.field("infinite", rep.infinite);
            w.field("support_violation", rep.support_violation);
            w.key("peak_weight_argmax").value(rep.peak_weight_argmax);
            w.field("notes", rep.notes);
            w.end_object();
            emit(w.str(), no->out);
        };
    });

    // ------------------------------------------------------------ fit-class
    auto* fc_cmd = app.add_subcommand("fit-class", "search class constants (A, B)");
    auto fa = std::make_shared<SeqFlags>();
    auto fb = std::make_shared<SeqFlags>();
    fa->attach(fc_cmd, "-a");
    fb->attach(fc_cmd, "-b");
    struct FitOpts {
        int M = 2;
        double target = 100.0;
        std::string input, out;
    };
    auto fo = std::make_shared<FitOpts>();
    fc_cmd->add_option("--M", fo->M, "derivative order cap");
    fc_cmd->add_option("--target", fo->target, "norm threshold");
    fc_cmd->add_option("input", fo->input, "GSGF file")->required();
    fc_cmd->add_option("--out", fo->out, "output path");
    fc_cmd->callback([fa, fb, fo, &action] {
        action = [=] {
            mk::GridFunction f = mk::read_gsgf(fo->input);
            auto fit = mk::fit_class_constants(f, fa->build(), fb->build(),
                                               fo->M, fo->target);
            mk::JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.field("found", static_cast<bool>(fit));
            if (fit) {
                w.field("A", fit->A);
                w.field("B", fit->B);
                w.field("norm_value", fit->norm_value);
            }
            w.field("target", fo->target);
            w.end_object();
            emit(w.str(), fo->out);
        };
    });

    // ----------------------------------------------------------------- star
    auto* st_cmd = app.add_subcommand("star", "star products and convolutions");
    struct StarOpts {
        std::string method = "moyal";
        std::string backend = "fourier";
        double hbar = 1.0;
        double theta = 1.0;
        std::string s_path;
        std::string sign = "standard";
        std::vector<std::string> inputs;
        std::string out;
    };
    auto sto = std::make_shared<StarOpts>();
    st_cmd->add_option("--method", sto->method,
                       "moyal | starS | twisted | deformed | symplectic");
    st_cmd->add_option("--backend", sto->backend, "direct | fourier");
    st_cmd->add_option("--hbar", sto->hbar, "deformation parameter");
    st_cmd->add_option("--theta", sto->theta, "twisted-convolution parameter");
    st_cmd->add_option("--S", sto->s_path, "2d x 2d matrix CSV");
    st_cmd->add_option("--sign", sto->sign, "standard | conjugate (symplectic)");
    st_cmd->add_option("inputs", sto->inputs, "GSGF operand files")->required();
    st_cmd->add_option("--out", sto->out, "GSGF output")->required();
    st_cmd->callback([sto, &action] {
        action = [=] {
            mk::GridFunction f = mk::read_gsgf(sto->inputs.at(0));
            mk::StarConfig cfg;
            cfg.hbar = sto->hbar;
            cfg.backend = sto->backend == "direct"
                              ? mk::StarBackend::direct_quadrature
                              : mk::StarBackend::fourier;
            if (!sto->s_path.empty())
                cfg.s_matrix = parse_matrix_csv(sto->s_path, f.spec.dim);
            mk::GridFunction result;
            if (sto->method == "symplectic") {
                result = mk::symplectic_fourier(
                    f, sto->hbar,
                    sto->sign == "conjugate" ? mk::SymplecticSign::conjugate
                                             : mk::SymplecticSign::standard);
            } else {
                if (sto->inputs.size() < 2)
                    throw mk::UsageError(sto->method + " needs two operands");
                mk::GridFunction g = mk::read_gsgf(sto->inputs.at(1));
                if (sto->method == "moyal")
                    result = mk::moyal(f, g, cfg);
                else if (sto->method == "starS")
                    result = mk::star_s(f, g, cfg);
                else if (sto->method == "twisted")
                    result = mk::twisted_convolution(f, g, sto->theta);
                else if (sto->method == "deformed")
                    result = mk::deformed_convolution(f, g, cfg);
                else
                    throw mk::UsageError("unknown method " + sto->method);
            }
            mk::write_gsgf(result, sto->out);
        };
    });

    // ------------------------------------------------------------ approx-id
    auto* ai_cmd = app.add_subcommand("approx-id", "approximate-identity convergence run");
    struct AiOpts {
        double sigma = 2.4;
        double hbar = 1.0;
        int n_grid = 128;
        double half_width = 12.0;
        std::vector<int> indices{1, 2, 4, 8};
        std::string out;
    };
    auto ai = std::make_shared<AiOpts>();
    ai_cmd->add_option("--sigma", ai->sigma, "base mollifier width");
    ai_cmd->add_option("--hbar", ai->hbar, "twist parameter");
    ai_cmd->add_option("--n", ai->n_grid, "samples per axis");
    ai_cmd->add_option("--L", ai->half_width, "box half-width");
    ai_cmd->add_option("--indices", ai->indices, "dilation indices");
    ai_cmd->add_option("--out", ai->out, "output path");
    ai_cmd->callback([ai, &action] {
        action = [=] {
            mk::GridSpec spec{2, ai->n_grid, ai->half_width};
            double s2 = ai->sigma * ai->sigma;
            mk::AnalyticFunction e1 = mk::isotropic_gaussian(
                2, mk::cxd(1.0 / (3.14159265358979323846 * s2), 0.0),
                {0.0, 0.0}, 1.0 / s2);
            mk::GridFunction e1_grid = mk::sample(e1, spec);
            mk::GridFunction g = mk::sample(
                mk::isotropic_gaussian(2, mk::cxd(1.0, 0.0), {0.0, 0.0}, 1.0),
                spec);
            mk::JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("runs").begin_array();
            for (int n : ai->indices) {
                mk::ApproxIdentity ap = mk::make_approx_identity(e1_grid, n, &e1);
                mk::GridFunction left =
                    mk::twisted_convolution(ap.e_n, g, ai->hbar);
                mk::GridFunction right =
                    mk::twisted_convolution(g, ap.e_n, ai->hbar);
                w.begin_object();
                w.key("n").value(n);
                w.field("left_error", mk::sup_distance(left, g) / g.max_abs());
                w.field("right_error", mk::sup_distance(right, g) / g.max_abs());
                w.field("mass", mk::grid_integral(ap.e_n).real());
                w.end_object();
            }
            w.end_array();
            w.end_object();
            emit(w.str(), ai->out);
        };
    });

    // --------------------------------------------------------------- extend
    auto* ex_cmd = app.add_subcommand("extend", "convolutor-extension functional");
    struct ExOpts {
        std::string u_family = "poly2";
        int n_grid = 128;
        double half_width = 12.0;
        double h_lambda = 1.0, h_center = 0.0;
        std::string out;
    };
    auto ex = std::make_shared<ExOpts>();
    ex_cmd->add_option("--u-family", ex->u_family, "constant | poly2 | gaussian");
    ex_cmd->add_option("--n", ex->n_grid, "samples per axis");
    ex_cmd->add_option("--L", ex->half_width, "box half-width");
    ex_cmd->add_option("--h-lambda", ex->h_lambda, "test-function decay rate");
    ex_cmd->add_option("--h-center", ex->h_center, "test-function center");
    ex_cmd->add_option("--out", ex->out, "output path");
    ex_cmd->callback([ex, &action] {
        action = [=] {
            mk::GridSpec spec{1, ex->n_grid, ex->half_width};
            mk::GridFunction urep;
            if (ex->u_family == "constant") {
                urep = mk::make_grid_function(spec, "constant");
                for (auto& v : urep.samples) v = mk::cxd(1.0, 0.0);
            } else if (ex->u_family == "poly2") {
                urep = mk::sample(
                    mk::polynomial(1, {mk::Monomial{{2}, mk::cxd(1.0, 0.0)}}),
                    spec);
            } else if (ex->u_family == "gaussian") {
                urep = mk::sample(mk::isotropic_gaussian(
                                      1, mk::cxd(1.0, 0.0), {0.0}, 0.25),
                                  spec);
            } else {
                throw mk::UnsupportedFamily("unknown u family " + ex->u_family);
            }
            mk::GridFunction h = mk::sample(
                mk::isotropic_gaussian(1, mk::cxd(1.0, 0.0), {ex->h_center},
                                       ex->h_lambda),
                spec);
            const double pi = 3.14159265358979323846;
            mk::GridFunction f0a = mk::sample(
                mk::isotropic_gaussian(1, mk::cxd(std::pow(pi, -0.5), 0.0),
                                       {0.0}, 1.0),
                spec);
            mk::GridFunction f0b = mk::sample(
                mk::isotropic_gaussian(1, mk::cxd(std::sqrt(2.0 / pi), 0.0),
                                       {0.0}, 2.0),
                spec);
            mk::DualElement u{urep, 1.0, ex->u_family};
            mk::cxd ext_a = mk::extend_functional(u, f0a, h);
            mk::cxd ext_b = mk::extend_functional(u, f0b, h);
            mk::cxd direct = mk::grid_integral(mk::pointwise_product(urep, h));
            mk::JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.field("extended_re", ext_a.real());
            w.field("extended_im", ext_a.imag());
            w.field("direct_re", direct.real());
            w.field("direct_im", direct.imag());
            w.field("f0_independence",
                     std::abs(ext_a - ext_b) / std::abs(direct));
            w.field("restriction_defect",
                     std::abs(ext_a - direct) / std::abs(direct));
            w.end_object();
            emit(w.str(), ex->out);
        };
    });

    // ------------------------------------------------------------ multiplier
    auto* mu_cmd = app.add_subcommand("multiplier", "multiplier experiment with box sweep");
    struct MuOpts {
        std::string h_family = "poly";
        std::string f_family = "gaussian";
        double hbar = 1.0;
        int n_grid = 128;
        std::vector<double> boxes{8.0, 12.0, 16.0};
        double target = 100.0;
        int order = 2;
        std::string out;
        std::string profile_prefix;
    };
    auto mu = std::make_shared<MuOpts>();
    mu_cmd->add_option("--h-family", mu->h_family, "poly | chirp");
    mu_cmd->add_option("--f-family", mu->f_family, "gaussian");
    mu_cmd->add_option("--hbar", mu->hbar, "deformation parameter");
    mu_cmd->add_option("--n", mu->n_grid, "samples per axis");
    mu_cmd->add_option("--box-sweep", mu->boxes, "half-widths to sweep");
    mu_cmd->add_option("--target", mu->target, "class-constant fit target");
    mu_cmd->add_option("--order", mu->order, "derivative order for the fit");
    mu_cmd->add_option("--out", mu->out, "JSON report path");
    mu_cmd->add_option("--profile-prefix", mu->profile_prefix,
                       "write decay profiles to <prefix>_L<L>.csv");
    mu_cmd->callback([mu, &action] {
        action = [=] {
            mk::DefiningSequence a =
                mk::make_sequence(mk::SeqKind::gevrey, 0.5, 512);
            mk::AnalyticFunction h;
            if (mu->h_family == "poly")
                h = mk::polynomial(2, {mk::Monomial{{0, 0}, mk::cxd(1.0, 0.0)},
                                       mk::Monomial{{2, 0}, mk::cxd(1.0, 0.0)},
                                       mk::Monomial{{0, 2}, mk::cxd(1.0, 0.0)}});
            else if (mu->h_family == "chirp")
                h = mk::chirp(2, {0.0, 1.0 / mu->hbar, 1.0 / mu->hbar, 0.0});
            else
                throw mk::UnsupportedFamily("unknown h family " + mu->h_family);
            if (mu->f_family != "gaussian")
                throw mk::UnsupportedFamily("unknown f family " + mu->f_family);
            mk::AnalyticFunction f = mk::isotropic_gaussian(
                2, mk::cxd(1.0, 0.0), {0.0, 0.0}, 1.0);
            mk::StarConfig cfg{mu->hbar, {}, mk::StarBackend::fourier};
            mk::MultiplierOptions options;
            options.target = mu->target;
            options.norm_order = mu->order;
            mk::JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.field("h_family", mu->h_family);
            w.key("sweep").begin_array();
            for (double L : mu->boxes) {
                mk::GridSpec spec{2, mu->n_grid, L};
                mk::MultiplierReport rep = mk::multiplier_experiment(
                    h, f, cfg, spec, a, a, options);
                w.begin_object();
                w.field("L", L);
                w.field("success", rep.success);
                w.field("A", rep.fitted_A);
                w.field("B", rep.fitted_B);
                w.field("norm_value", rep.norm_value);
                w.field("window_width", rep.window_width);
                w.field("window_sensitivity", rep.window_sensitivity);
                w.end_object();
                if (!mu->profile_prefix.empty()) {
                    std::ostringstream name;
                    name << mu->profile_prefix << "_L" << L << ".csv";
                    std::ofstream os(name.str());
                    os << "radius,max_abs\n";
                    for (const auto& [r, v] : rep.decay_profile)
                        os << mk::format_double_17(r) << ','
                           << mk::format_double_17(v) << '\n';
                }
            }
            w.end_array();
            w.end_object();
            emit(w.str(), mu->out);
        };
    });

    // -------------------------------------------------------------- quantize
    auto* q_cmd = app.add_subcommand("quantize", "operator matrix on the Hermite basis");
    struct QOpts {
        std::string family = "oscillator";
        double hbar = 1.0;
        int n_grid = 128;
        double half_width = 12.0;
        int basis = 16;
        std::string s_path;
        std::string out_matrix;
        std::string out;
        std::string input;
    };
    auto qo = std::make_shared<QOpts>();
    q_cmd->add_option("--symbol-family", qo->family,
                      "oscillator | gaussian | identity | file");
    q_cmd->add_option("--input", qo->input, "GSGF symbol (family=file)");
    q_cmd->add_option("--hbar", qo->hbar, "deformation parameter");
    q_cmd->add_option("--n", qo->n_grid, "samples per axis");
    q_cmd->add_option("--L", qo->half_width, "box half-width");
    q_cmd->add_option("--basis", qo->basis, "Hermite basis size K");
    q_cmd->add_option("--S", qo->s_path, "ordering matrix CSV");
    q_cmd->add_option("--out-matrix", qo->out_matrix, "matrix CSV (re, im interleaved)");
    q_cmd->add_option("--out", qo->out, "JSON spectral report");
    q_cmd->callback([qo, &action] {
        action = [=] {
            mk::GridSpec spec{2, qo->n_grid, qo->half_width};
            mk::StarConfig cfg;
            cfg.hbar = qo->hbar;
            if (!qo->s_path.empty())
                cfg.s_matrix = parse_matrix_csv(qo->s_path, 2);
            mk::AnalyticFunction fn;
            mk::GridFunction grid_symbol;
            mk::Symbol sym;
            if (qo->family == "oscillator") {
                fn = mk::polynomial(2,
                                    {mk::Monomial{{2, 0}, mk::cxd(0.5, 0.0)},
                                     mk::Monomial{{0, 2}, mk::cxd(0.5, 0.0)}});
                sym = mk::symbol_from_analytic(fn);
            } else if (qo->family == "gaussian") {
                fn = mk::isotropic_gaussian(2, mk::cxd(1.0, 0.0), {0.0, 0.0},
                                            1.0);
                sym = mk::symbol_from_analytic(fn);
            } else if (qo->family == "identity") {
                fn = mk::polynomial(2, {mk::Monomial{{0, 0}, mk::cxd(1.0, 0.0)}});
                sym = mk::symbol_from_analytic(fn);
            } else if (qo->family == "file") {
                grid_symbol = mk::read_gsgf(qo->input);
                sym = mk::symbol_from_grid(grid_symbol);
            } else {
                throw mk::UnsupportedFamily("unknown symbol family " + qo->family);
            }
            mk::OperatorMatrix m =
                mk::op_matrix(sym, cfg, spec, qo->basis);
            if (!qo->out_matrix.empty()) {
                std::ofstream os(qo->out_matrix);
                for (int r = 0; r < m.basis_size; ++r) {
                    for (int c = 0; c < m.basis_size; ++c) {
                        if (c) os << ',';
                        os << mk::format_double_17(m.at(r, c).real()) << ','
                           << mk::format_double_17(m.at(r, c).imag());
                    }
                    os << '\n';
                }
            }
            mk::JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("basis").value(m.basis_size);
            w.field("hbar", m.hbar);
            w.field("hermiticity_defect", m.hermiticity_defect());
            w.field("trace_re", m.trace().real());
            w.field("trace_im", m.trace().imag());
            w.key("diagonal").begin_array();
            for (int k = 0; k < m.basis_size; ++k) w.value(m.at(k, k).real());
            w.end_array();
            w.end_object();
            emit(w.str(), qo->out);
        };
    });

    // ---------------------------------------------------------------- verify
    auto* v_cmd = app.add_subcommand("verify", "run the property-suite batteries");
    struct VOpts {
        std::string suite = "all";
        std::string grid = "128x128";
        double half_width = 12.0;
        double hbar = 1.0;
        long long seed = 20240915;
        double tolerance = -1.0;
        std::string out;
    };
    auto vo = std::make_shared<VOpts>();
    v_cmd->add_option("--suite", vo->suite,
                      "all | sequences | gridfn | starprod | multipliers | quantize");
    v_cmd->add_option("--grid", vo->grid, "phase-space grid, e.g. 128x128");
    v_cmd->add_option("--L", vo->half_width, "box half-width");
    v_cmd->add_option("--hbar", vo->hbar, "deformation parameter");
    v_cmd->add_option("--seed", vo->seed, "seed for randomized draws");
    v_cmd->add_option("--tolerance", vo->tolerance,
                      "override every criterion tolerance");
    v_cmd->add_option("--out", vo->out, "JSON report path");
    v_cmd->callback([vo, &action] {
        action = [=] {
            mk::RunConfig config;
            mk::GridSpec spec = parse_grid(vo->grid, vo->half_width);
            config.grid_n = spec.n;
            config.grid_half_width = vo->half_width;
            config.hbar = vo->hbar;
            config.seed = static_cast<std::uint64_t>(vo->seed);
            config.tolerance_override = vo->tolerance;
            std::vector<mk::CriterionResult> results =
                mk::run_suite(vo->suite, config);
            mk::print_results(results);
            if (!vo->out.empty())
                mk::write_text_file(vo->out,
                                    mk::suite_report_json(results, config) + "\n");
            for (const auto& r : results)
                if (!r.passed)
                    throw mk::TruncationError("verify: " + std::to_string(
                        std::count_if(results.begin(), results.end(),
                                      [](const auto& x) { return !x.passed; })) +
                        " criteria failed");
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    try {
        action();
    } catch (const mk::Error& e) {
        std::cerr << e.what() << std::endl;
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 0;
}
