#include "tritime/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tritime/errors.hpp"
#include "tritime/io.hpp"

namespace tritime::kinematics {

using expr::Binding;
using expr::Number;
using expr::Rational;
using fieldcheck::Candidate;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::array<int, 6> kEta{1, -1, -1, -1, -1, -1};

Expr I() { return Expr::imaginary_unit(); }

Expr constant(Complex v) {
    if (v.imag() == 0.0 && v.real() == std::round(v.real()) && std::abs(v.real()) < 1e15)
        return Expr(static_cast<std::int64_t>(v.real()));
    return Expr(Number::approx(v));
}

int worker_count(int requested) {
    if (requested > 0) return requested;
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(std::min(h, 32u));
}

// Runs body(begin, end, thread_index) over [0, N) split into contiguous chunks.
template <class F>
void parallel_chunks(std::uint64_t N, int threads, F body) {
    int T = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(worker_count(threads)), std::max<std::uint64_t>(N, 1)));
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t) {
        std::uint64_t b = N * static_cast<std::uint64_t>(t) / static_cast<std::uint64_t>(T);
        std::uint64_t e = N * static_cast<std::uint64_t>(t + 1) / static_cast<std::uint64_t>(T);
        pool.emplace_back([=, &body] { body(b, e, t); });
    }
    for (auto& th : pool) th.join();
}

Vector6 add(const Vector6& a, const Vector6& b) {
    Vector6 out;
    for (int k = 0; k < 6; ++k) out[k] = a[k] + b[k];
    return out;
}

Vector6 sub(const Vector6& a, const Vector6& b) {
    Vector6 out;
    for (int k = 0; k < 6; ++k) out[k] = a[k] - b[k];
    return out;
}

}  // namespace

ThreeTimePoint ThreeTimePoint::normalized() const {
    auto wrap = [](double a) {
        double r = std::fmod(a, kTwoPi);
        if (r < 0) r += kTwoPi;
        if (r >= kTwoPi) r = 0.0;
        return r;
    };
    return {tau, wrap(sigma), wrap(phi)};
}

Expr tau() { return Expr::coordinate(0); }
Expr sigma() { return Expr::coordinate(1); }
Expr phi() { return Expr::coordinate(2); }

Expr dot6(const Vector6& a, const Vector6& b) {
    Expr acc;
    for (int k = 0; k < 6; ++k) acc = acc + Expr(kEta[k]) * a[k] * b[k];
    return acc;
}

Vector6 d_param(const Vector6& v, int index) {
    Vector6 out;
    for (int k = 0; k < 6; ++k) out[k] = expr::differentiate(v[k], index);
    return out;
}

// ---------------------------------------------------------------- worldlines

namespace {

struct Pieces {
    Expr m0;
    Expr p0;
    std::array<Expr, 3> p;
    std::array<Expr, 3> n;
    Expr p_dot_n;
};

Pieces pieces(const ParticleState& s, const std::array<double, 3>& direction, std::array<double, 3>& n_out) {
    Pieces out;
    out.m0 = catalog::sym::m0();
    double pmag = std::sqrt(s.p[1] * s.p[1] + s.p[2] * s.p[2] + s.p[3] * s.p[3]);
    if (pmag > 0.0) {
        Expr p2;
        for (int i = 0; i < 3; ++i) {
            out.p[i] = catalog::sym::p(i + 1);
            p2 = p2 + out.p[i] * out.p[i];
        }
        Expr mag = expr::sqrt(p2);
        for (int i = 0; i < 3; ++i) {
            out.n[i] = out.p[i] * pow(mag, Rational(-1));
            n_out[i] = s.p[i + 1] / pmag;
        }
        out.p0 = expr::sqrt(out.m0 * out.m0 + p2);
        out.p_dot_n = mag;
    } else {
        std::array<double, 3> d = direction;
        double dm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        if (dm == 0.0) d = {0.0, 0.0, 1.0}, dm = 1.0;
        for (int i = 0; i < 3; ++i) {
            out.p[i] = Expr(0);
            n_out[i] = d[i] / dm;
            out.n[i] = constant(n_out[i]);
        }
        out.p0 = out.m0;
        out.p_dot_n = Expr(0);
    }
    return out;
}

Vector6 oscillator(const Pieces& P, const WorldlineOptions& o, const Expr& amplitude, const Expr& slot0,
                   const Expr& spatial, const Expr& slot5) {
    Vector6 v;
    Expr inv_m = pow(P.m0, Rational(-1));
    v[0] = amplitude * P.p_dot_n * inv_m * o.R0 * slot0;
    for (int i = 0; i < 3; ++i) v[1 + i] = amplitude * P.p0 * inv_m * P.n[i] * o.Ri * spatial;
    v[4] = Expr(0);
    v[5] = amplitude * I() * o.R5 * slot5;
    return v;
}

}  // namespace

WorldlineSet build_worldlines(const ParticleState& state, const WorldlineOptions& options) {
    state.validate();
    if (!(state.m0 > 0.0)) throw DomainError("worldlines need a positive rest mass");
    WorldlineSet ws;
    ws.state = state;
    ws.options = options;
    if (options.reality) ws.options.beta = ws.options.alpha;
    Pieces P = pieces(state, options.direction, ws.n);
    Expr inv_m = pow(P.m0, Rational(-1));

    ws.x_tau[0] = P.p0 * inv_m * tau();
    for (int i = 0; i < 3; ++i) ws.x_tau[1 + i] = P.p[i] * inv_m * tau();
    ws.x_tau[4] = tau();
    ws.x_tau[5] = Expr(0);

    Expr e_sigma = exp(-(I() * P.m0 * (tau() + sigma())));
    Expr e_phi_plus = exp(I() * P.m0 * (tau() + phi()));
    Expr e_phi_minus = exp(-(I() * P.m0 * (tau() + phi())));
    Expr a = constant(ws.options.alpha);
    Expr b = constant(ws.options.beta);
    ws.x_sigma = oscillator(P, ws.options, a, e_sigma, e_sigma, e_sigma);
    Vector6 displayed = oscillator(P, ws.options, b, e_phi_plus, e_phi_minus, e_phi_plus);
    Vector6 matched = oscillator(P, ws.options, b, e_phi_plus, e_phi_plus, e_phi_plus);
    if (options.phi_phase == PhiSpatialPhase::AsDisplayed) {
        ws.x_phi = displayed;
        ws.x_phi_other = matched;
    } else {
        ws.x_phi = matched;
        ws.x_phi_other = displayed;
    }

    Binding b0 = state.binding().merged(options.extra);
    io::Substream rng(7, 0);
    for (int k = 0; k < 64; ++k) {
        Binding at = b0;
        at.set_coord(0, 4.0 * rng.uniform() - 2.0).set_coord(1, kTwoPi * rng.uniform()).set_coord(2, kTwoPi * rng.uniform());
        for (const Expr* R : {&options.R0, &options.Ri, &options.R5}) {
            Complex v = expr::evaluate(*R, at);
            if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-12) throw DomainError("R must be positive on the domain");
        }
    }
    return ws;
}

Binding WorldlineSet::binding() const {
    Binding b = state.binding().merged(options.extra);
    for (int k = 0; k < 4; ++k) b.set_param("q" + std::to_string(k), options.q[static_cast<std::size_t>(k)]);
    return b;
}

Vector6 WorldlineSet::total(bool other_phase) const {
    Vector6 x = add(add(x_tau, x_sigma), other_phase ? x_phi_other : x_phi);
    for (int k = 0; k < 4; ++k) x[k] = x[k] + Expr::parameter("q" + std::to_string(k));
    return x;
}

std::array<Complex, 6> WorldlineSet::position(const ThreeTimePoint& t, bool other_phase) const {
    Binding b = binding();
    b.set_coord(0, t.tau).set_coord(1, t.sigma).set_coord(2, options.reality ? t.sigma : t.phi);
    Vector6 x = total(other_phase);
    std::array<Complex, 6> out;
    for (int k = 0; k < 6; ++k) out[k] = expr::evaluate(x[k], b);
    return out;
}

namespace {

struct Form {
    std::string label;
    std::function<std::vector<Expr>(const Vector6& xt, const Vector6& xs, const Vector6& xp)> residuals;
};

const Vector6& displayed_phi(const WorldlineSet& ws) {
    return ws.options.phi_phase == PhiSpatialPhase::AsDisplayed ? ws.x_phi : ws.x_phi_other;
}
const Vector6& matched_phi(const WorldlineSet& ws) {
    return ws.options.phi_phase == PhiSpatialPhase::AsDisplayed ? ws.x_phi_other : ws.x_phi;
}

ResidualReport claim(const WorldlineSet& ws, const expr::Sampling& s, std::string id, std::string anchor,
                     const std::vector<Form>& forms, std::string notes = {}) {
    std::vector<Candidate> cs;
    for (const auto& f : forms) {
        cs.push_back({f.label + ", x_phi as displayed", f.residuals(ws.x_tau, ws.x_sigma, displayed_phi(ws)), 0.0, false});
        cs.push_back({f.label + ", x_phi phase as in the trajectory", f.residuals(ws.x_tau, ws.x_sigma, matched_phi(ws)),
                      0.0, false});
    }
    return fieldcheck::sweep_claim(std::move(id), std::move(anchor), std::move(cs), s, std::move(notes));
}

Vector6 with_q(const Vector6& x) {
    Vector6 out = x;
    for (int k = 0; k < 4; ++k) out[k] = out[k] + Expr::parameter("q" + std::to_string(k));
    return out;
}

}  // namespace

std::vector<ResidualReport> check_constraints(const WorldlineSet& ws, std::uint64_t seed) {
    expr::Sampling s = fieldcheck::sampling_for(ws.binding(), seed);
    for (int k = 0; k < 4; ++k) s.param_ranges["q" + std::to_string(k)] = {-1.0, 1.0};
    std::vector<ResidualReport> out;

    out.push_back(claim(ws, s, "worldline.null", "eq:worldline-null",
                        {{"x.x = 0 for each worldline",
                          [](const Vector6& t, const Vector6& a, const Vector6& b) {
                              return std::vector<Expr>{dot6(t, t), dot6(a, a), dot6(b, b)};
                          }}},
                        "bilinear 6-D products with signature (+,-,-,-,-,-)"));
    out.push_back(claim(ws, s, "worldline.orthogonal", "eq:worldline-orthogonal",
                        {{"pairwise products vanish",
                          [](const Vector6& t, const Vector6& a, const Vector6& b) {
                              return std::vector<Expr>{dot6(t, a), dot6(t, b), dot6(a, b)};
                          }}}));

    auto total = [](const Vector6& t, const Vector6& a, const Vector6& b) { return with_q(add(add(t, a), b)); };
    out.push_back(claim(ws, s, "worldline.constraint_tau_sigma", "eq:constraints-two-time",
                        {{"xdot.x' = 0",
                          [&](const Vector6& t, const Vector6& a, const Vector6& b) {
                              Vector6 x = total(t, a, b);
                              return std::vector<Expr>{dot6(d_param(x, 0), d_param(x, 1))};
                          }}}));
    out.push_back(claim(ws, s, "worldline.constraint_tau_phi", "eq:constraints-three-time",
                        {{"xdot.x* = 0",
                          [&](const Vector6& t, const Vector6& a, const Vector6& b) {
                              Vector6 x = total(t, a, b);
                              return std::vector<Expr>{dot6(d_param(x, 0), d_param(x, 2))};
                          }}}));
    out.push_back(claim(ws, s, "worldline.constraint_sigma_phi", "eq:constraints-three-time",
                        {{"xdot'.x* = 0",
                          [&](const Vector6& t, const Vector6& a, const Vector6& b) {
                              Vector6 x = total(t, a, b);
                              return std::vector<Expr>{dot6(d_param(d_param(x, 0), 1), d_param(x, 2))};
                          }},
                         {"x'.x* = 0", [&](const Vector6& t, const Vector6& a, const Vector6& b) {
                              Vector6 x = total(t, a, b);
                              return std::vector<Expr>{dot6(d_param(x, 1), d_param(x, 2))};
                          }}}));
    auto norm_forms = [&](int compact, const std::string& prime) {
        return std::vector<Form>{
            {"xdot.x + " + prime + "." + prime + " = 0",
             [&, compact](const Vector6& t, const Vector6& a, const Vector6& b) {
                 Vector6 x = total(t, a, b);
                 Vector6 xc = d_param(x, compact);
                 return std::vector<Expr>{dot6(d_param(x, 0), x) + dot6(xc, xc)};
             }},
            {"xdot.xdot + " + prime + "." + prime + " = 0",
             [&, compact](const Vector6& t, const Vector6& a, const Vector6& b) {
                 Vector6 x = total(t, a, b);
                 Vector6 xd = d_param(x, 0);
                 Vector6 xc = d_param(x, compact);
                 return std::vector<Expr>{dot6(xd, xd) + dot6(xc, xc)};
             }}};
    };
    out.push_back(claim(ws, s, "worldline.constraint_norm_sigma", "eq:constraints-two-time", norm_forms(1, "x'")));
    out.push_back(claim(ws, s, "worldline.constraint_norm_phi", "eq:constraints-three-time", norm_forms(2, "x*")));
    out.push_back(claim(ws, s, "worldline.wave_equation", "eq:wave-equation-three-time",
                        {{"xddot = x'' + x**", [&](const Vector6& t, const Vector6& a, const Vector6& b) {
                              Vector6 x = total(t, a, b);
                              Vector6 lhs = d_param(d_param(x, 0), 0);
                              Vector6 rhs = add(d_param(d_param(x, 1), 1), d_param(d_param(x, 2), 2));
                              Vector6 r = sub(lhs, rhs);
                              return std::vector<Expr>(r.begin(), r.end());
                          }}}));

    if (ws.options.reality) {
        ResidualReport r;
        r.id = "worldline.reality";
        r.anchor = "eq:reality-condition";
        double shown = reality_residual(ws, 1000, seed, ws.options.phi_phase != PhiSpatialPhase::AsDisplayed);
        double matched = reality_residual(ws, 1000, seed, ws.options.phi_phase == PhiSpatialPhase::AsDisplayed);
        r.candidates.push_back({"x_phi as displayed", {}, shown, shown <= 1e-12});
        r.candidates.push_back({"x_phi phase as in the trajectory", {}, matched, matched <= 1e-12});
        const Candidate* chosen = nullptr;
        for (const auto& c : r.candidates)
            if (c.vanishes && !chosen) chosen = &c;
        r.verdict = chosen != nullptr;
        r.convention = chosen ? (chosen == &r.candidates.front() ? "as displayed" : chosen->label) : "none";
        r.max_residual = chosen ? chosen->max_residual : shown;
        std::ostringstream notes;
        notes << "max |Im x^mu| over mu = 0..4 at 1000 samples with alpha = beta, sigma = phi; x^5 = i c R (...) is "
                 "imaginary by construction. sweep: as displayed "
              << shown << "; trajectory phase " << matched;
        r.notes = notes.str();
        out.push_back(std::move(r));
    }
    return out;
}

double reality_residual(const WorldlineSet& ws, int samples, std::uint64_t seed, bool other_phase) {
    WorldlineSet restricted = ws;
    restricted.options.reality = true;
    double worst = 0.0;
    io::Substream rng(seed, 0x5eed);
    for (int k = 0; k < samples; ++k) {
        ThreeTimePoint t{10.0 * rng.uniform() - 5.0, kTwoPi * rng.uniform(), 0.0};
        auto x = restricted.position(t, other_phase);
        for (int mu = 0; mu < 5; ++mu) worst = std::max(worst, std::abs(x[mu].imag()));
    }
    return worst;
}

// ---------------------------------------------------------------- de Broglie

DeBroglie de_broglie(double m0, double m, double u, double h, double c) {
    if (!(m > 0.0) || !(h > 0.0) || !(c > 0.0) || !(m0 >= 0.0)) throw DomainError("masses, h and c must be positive");
    DeBroglie out;
    const double inf = std::numeric_limits<double>::infinity();
    out.period = h / (m * c * c);
    if (u == 0.0) {
        out.wavelength = inf;
        out.phase_velocity = inf;
        out.phase_velocity_ratio = inf;
        out.readings_agree = true;
        return out;
    }
    out.wavelength = h / (m * std::abs(u));
    out.phase_velocity = m0 * c / (m * std::abs(u));
    out.phase_velocity_ratio = c * c / std::abs(u);
    out.readings_agree = std::abs(out.phase_velocity - out.phase_velocity_ratio) <= 1e-12 * out.phase_velocity_ratio;
    return out;
}

DeBroglie de_broglie_observables(const ParticleState& state) {
    state.validate();
    double pmag = std::sqrt(state.p[1] * state.p[1] + state.p[2] * state.p[2] + state.p[3] * state.p[3]);
    double m = state.p[0];
    return de_broglie(state.m0, m, pmag / m, kTwoPi * state.hbar, 1.0);
}

double worldline_phase_velocity(const WorldlineSet& ws) {
    Binding b = ws.binding();
    double spatial = 0.0;
    for (int i = 1; i <= 3; ++i) spatial += std::norm(expr::evaluate(ws.x_sigma[i], b));
    double temporal = std::abs(expr::evaluate(ws.x_sigma[0], b));
    if (temporal == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(spatial) / temporal;
}

// ---------------------------------------------------------------- measurement

Profile Profile::constant(double value) {
    if (!(value > 0.0)) throw DomainError("constant profile must be positive");
    return {"constant", [value](double) { return value; }};
}

Profile Profile::gaussian(double width, double center) {
    if (!(width > 0.0)) throw DomainError("gaussian width must be positive");
    return {"gaussian", [width, center](double x) {
                double z = (x - center) / width;
                return std::exp(-0.5 * z * z);
            }};
}

Profile Profile::two_bump(double separation, double width) {
    if (!(width > 0.0)) throw DomainError("bump width must be positive");
    return {"two-bump", [separation, width](double x) {
                double a = (x - 0.5 * separation) / width;
                double b = (x + 0.5 * separation) / width;
                return std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b);
            }};
}

Profile Profile::named(const std::string& name) {
    if (name == "constant") return constant();
    if (name == "gaussian") return gaussian();
    if (name == "two-bump") return two_bump();
    throw ConfigError("unknown profile '" + name + "' (expected constant, gaussian or two-bump)");
}

double integrate_density(const Profile& p, double a, double b) {
    auto f = [&](double x) {
        double r = p.R(x);
        return r * r;
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-13);
}

double MeasurementResult::within_bound_fraction() const {
    if (target.empty()) return 0.0;
    std::size_t ok = 0;
    for (std::size_t b = 0; b < target.size(); ++b) {
        double p = target[b];
        double bound = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(N));
        if (std::abs(empirical[b] - p) <= bound) ++ok;
    }
    return static_cast<double>(ok) / static_cast<double>(target.size());
}

MeasurementResult measure(const Profile& profile, const Box& box, std::uint64_t N, std::uint64_t seed, int threads) {
    if (!(box.hi > box.lo) || box.bins < 1) throw EmptyBox("measurement box must have positive extent and bins");
    if (N < 1) throw DomainError("sample count must be positive");
    const double width = box.hi - box.lo;
    const double bw = width / box.bins;

    double rmax = 0.0;
    for (int k = 0; k <= 4096; ++k) {
        double r = profile.R(box.lo + width * k / 4096.0);
        if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("profile must be finite and non-negative on the box");
        rmax = std::max(rmax, r);
    }
    if (!(rmax > 0.0)) throw DomainError("profile vanishes on the box");
    rmax *= 1.0 + 1e-9;

    MeasurementResult out;
    out.N = N;
    out.seed = seed;
    out.counts.assign(static_cast<std::size_t>(box.bins), 0);
    out.target.resize(static_cast<std::size_t>(box.bins));
    out.bin_centers.resize(static_cast<std::size_t>(box.bins));
    double total = integrate_density(profile, box.lo, box.hi);
    for (int b = 0; b < box.bins; ++b) {
        double a = box.lo + b * bw;
        out.bin_centers[b] = a + 0.5 * bw;
        out.target[b] = integrate_density(profile, a, a + bw) / total;
    }

    int T = worker_count(threads);
    std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(T),
                                                  std::vector<std::uint64_t>(static_cast<std::size_t>(box.bins), 0));
    std::vector<std::uint64_t> trials(static_cast<std::size_t>(T), 0);
    parallel_chunks(N, T, [&](std::uint64_t begin, std::uint64_t end, int t) {
        auto& counts = local[static_cast<std::size_t>(t)];
        std::uint64_t tries = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            io::Substream rng(seed, i);
            for (;;) {
                ++tries;
                // Candidate position swept by the sigma loop, and the apparatus offsets in sigma and phi.
                double x = box.lo + width * rng.uniform();
                double window = kTwoPi * std::min(1.0, profile.R(x) / rmax);
                double s = kTwoPi * rng.uniform();
                double f = kTwoPi * rng.uniform();
                if (s < window && f < window) {
                    int b = std::min(box.bins - 1, static_cast<int>((x - box.lo) / bw));
                    ++counts[static_cast<std::size_t>(b)];
                    break;
                }
            }
        }
        trials[static_cast<std::size_t>(t)] = tries;
    });
    for (int t = 0; t < T; ++t) {
        for (int b = 0; b < box.bins; ++b) out.counts[b] += local[t][b];
        out.trials += trials[t];
    }
    out.empirical.resize(out.counts.size());
    for (std::size_t b = 0; b < out.counts.size(); ++b)
        out.empirical[b] = static_cast<double>(out.counts[b]) / static_cast<double>(N);
    return out;
}

// ---------------------------------------------------------------- double slit

namespace {

double path_length(const DoubleSlitConfig& c, double y, double slit) {
    double dy = y - slit;
    if (c.model == PathModel::Paraxial) return c.L + dy * dy / (2.0 * c.L);
    return std::sqrt(c.L * c.L + dy * dy);
}

void validate(const DoubleSlitConfig& c) {
    if (!(c.d > 0.0)) throw GeometryError("slit separation must be positive");
    if (!(c.L > c.d)) throw GeometryError("screen distance must exceed the slit separation");
    if (!(c.lambda > 0.0)) throw DomainError("wavelength must be positive");
    if (!c.open[0] && !c.open[1]) throw GeometryError("both slits closed");
    if (c.bins < 1 || c.N < 1) throw DomainError("bins and N must be positive");
}

}  // namespace

double two_path_probability(const DoubleSlitConfig& c, double y) {
    Complex sum = 0.0;
    int open = 0;
    const double slits[2] = {0.5 * c.d, -0.5 * c.d};
    for (int k = 0; k < 2; ++k) {
        if (!c.open[k]) continue;
        ++open;
        double l = path_length(c, y, slits[k]);
        // Phase of the sigma worldline after the path: one turn per wavelength.
        sum += (c.L / l) * std::polar(1.0, -kTwoPi * l / c.lambda);
    }
    return std::norm(sum) / static_cast<double>(open * open);
}

InterferenceResult double_slit(const DoubleSlitConfig& config, int threads) {
    validate(config);
    InterferenceResult out;
    out.config = config;
    out.spacing = config.lambda * config.L / config.d;
    double Y = config.half_width > 0.0 ? config.half_width : 3.5 * out.spacing;
    out.config.half_width = Y;
    const int B = config.bins;
    const double bw = 2.0 * Y / B;
    out.y.resize(static_cast<std::size_t>(B));
    out.expected.resize(static_cast<std::size_t>(B));
    for (int b = 0; b < B; ++b) {
        out.y[b] = -Y + (b + 0.5) * bw;
        out.expected[b] = two_path_probability(config, out.y[b]);
    }

    int T = worker_count(threads);
    std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(T), std::vector<std::uint64_t>(static_cast<std::size_t>(B), 0));
    parallel_chunks(config.N, T, [&](std::uint64_t begin, std::uint64_t end, int t) {
        auto& counts = local[static_cast<std::size_t>(t)];
        for (std::uint64_t i = begin; i < end; ++i) {
            io::Substream rng(config.seed, i);
            for (;;) {
                double y = -Y + 2.0 * Y * rng.uniform();
                // The electron's own sigma phase is common to both paths.
                double sigma0 = kTwoPi * rng.uniform();
                Complex sum = 0.0;
                int open = 0;
                const double slits[2] = {0.5 * config.d, -0.5 * config.d};
                for (int k = 0; k < 2; ++k) {
                    if (!config.open[k]) continue;
                    ++open;
                    double l = path_length(config, y, slits[k]);
                    sum += (config.L / l) * std::polar(1.0, -(kTwoPi * l / config.lambda + sigma0));
                }
                double p = std::norm(sum) / static_cast<double>(open * open);
                if (rng.uniform() < p) {
                    int b = std::min(B - 1, static_cast<int>((y + Y) / bw));
                    ++counts[static_cast<std::size_t>(b)];
                    break;
                }
            }
        }
    });
    out.counts.assign(static_cast<std::size_t>(B), 0);
    for (int t = 0; t < T; ++t)
        for (int b = 0; b < B; ++b) out.counts[b] += local[t][b];
    std::uint64_t peak = *std::max_element(out.counts.begin(), out.counts.end());
    out.intensity.resize(out.counts.size());
    for (std::size_t b = 0; b < out.counts.size(); ++b)
        out.intensity[b] = peak ? static_cast<double>(out.counts[b]) / static_cast<double>(peak) : 0.0;
    return out;
}

std::vector<std::pair<int, double>> fringe_maxima(const InterferenceResult& r, int nmax) {
    std::vector<std::pair<int, double>> out;
    const double s = r.spacing;
    for (int n = -nmax; n <= nmax; ++n) {
        double c = n * s;
        for (int it = 0; it < 50; ++it) {
            double w = 0.0, m = 0.0;
            for (std::size_t b = 0; b < r.y.size(); ++b) {
                if (std::abs(r.y[b] - c) <= 0.5 * s) {
                    w += static_cast<double>(r.counts[b]);
                    m += static_cast<double>(r.counts[b]) * r.y[b];
                }
            }
            if (w == 0.0) break;
            double next = m / w;
            bool done = std::abs(next - c) <= 1e-6 * s;
            c = next;
            if (done) break;
        }
        out.emplace_back(n, c);
    }
    return out;
}

double fringe_deviation(const InterferenceResult& r, int nmax) {
    double worst = 0.0;
    for (auto [n, y] : fringe_maxima(r, nmax)) {
        double expect = n * r.spacing;
        double dev = n == 0 ? std::abs(y) / r.spacing : std::abs(y - expect) / std::abs(expect);
        worst = std::max(worst, dev);
    }
    return worst;
}

double visibility(const InterferenceResult& r) {
    const double s = r.spacing;
    const double bw = r.y.size() > 1 ? r.y[1] - r.y[0] : s;
    int half = std::max(1, static_cast<int>(std::round(0.05 * s / bw)));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    const int B = static_cast<int>(r.y.size());
    for (int b = 0; b < B; ++b) {
        if (std::abs(r.y[b]) > 2.0 * s) continue;
        double acc = 0.0;
        int n = 0;
        for (int k = std::max(0, b - half); k <= std::min(B - 1, b + half); ++k, ++n) acc += static_cast<double>(r.counts[k]);
        double v = acc / n;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi + lo == 0.0) return 0.0;
    return (hi - lo) / (hi + lo);
}

// ---------------------------------------------------------------- causality

double universal_time(const WorldlineSet& ws, const Event& e, TimeReading reading) {
    const auto& s = ws.state;
    if (reading == TimeReading::Trajectory) {
        auto x = ws.position({e.tau, e.sigma, e.sigma});
        return x[0].real();
    }
    double pmag = std::sqrt(s.p[1] * s.p[1] + s.p[2] * s.p[2] + s.p[3] * s.p[3]);
    // t-components of the oriented tau and sigma directions.
    return ws.options.q[0] + (s.p[0] / s.m0) * e.tau + std::abs(ws.options.alpha) * (pmag / s.m0) * e.sigma;
}

CausalityResult causality_pairs(const WorldlineSet& ws, const std::vector<std::pair<Event, Event>>& pairs,
                                TimeReading reading) {
    CausalityResult out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [a, b] = pairs[k];
        const Event* later = nullptr;
        const Event* earlier = nullptr;
        if (a.tau > b.tau && a.sigma > b.sigma) later = &a, earlier = &b;
        else if (b.tau > a.tau && b.sigma > a.sigma) later = &b, earlier = &a;
        if (!later) {
            ++out.pairs_excluded;
            continue;
        }
        ++out.pairs_checked;
        if (!(universal_time(ws, *later, reading) > universal_time(ws, *earlier, reading)))
            out.counterexamples.emplace_back(k, k);
    }
    return out;
}

CausalityResult causality_order(const WorldlineSet& ws, const std::vector<Event>& events, TimeReading reading) {
    CausalityResult out;
    std::vector<double> t(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) t[i] = universal_time(ws, events[i], reading);
    for (std::size_t i = 0; i < events.size(); ++i) {
        for (std::size_t j = i + 1; j < events.size(); ++j) {
            const auto& a = events[i];
            const auto& b = events[j];
            bool ab = a.tau > b.tau && a.sigma > b.sigma;
            bool ba = b.tau > a.tau && b.sigma > a.sigma;
            if (!ab && !ba) {
                ++out.pairs_excluded;
                continue;
            }
            ++out.pairs_checked;
            bool ok = ab ? t[i] > t[j] : t[j] > t[i];
            if (!ok) out.counterexamples.emplace_back(ab ? i : j, ab ? j : i);
        }
    }
    return out;
}

// ---------------------------------------------------------------- localization

SlopeRange localization_loop(double eps, int samples, bool quarter) {
    if (!(eps > 0.0)) throw DomainError("loop radius must be positive");
    if (samples < 1) throw DomainError("sample count must be positive");
    SlopeRange out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0.0};
    const double start = quarter ? -0.25 * std::numbers::pi : 0.0;
    const double span = quarter ? 0.5 * std::numbers::pi : kTwoPi;
    const double h = 1e-6;
    auto point = [&](double a) { return std::array<double, 2>{eps * std::cos(a), eps * std::sin(a)}; };
    for (int k = 0; k < samples; ++k) {
        double a = start + span * (k + 0.5) / samples;
        auto p1 = point(a + h);
        auto p0 = point(a - h);
        double tt = p1[0] - p0[0];
        double tx = p1[1] - p0[1];
        // Minkowski normal (tx, tt) of the tangent (tt, tx) in the (t, x) plane; slope dx/dt.
        double slope = tt / tx;
        out.min_slope = std::min(out.min_slope, slope);
        out.max_slope = std::max(out.max_slope, slope);
        out.max_abs = std::max(out.max_abs, std::abs(slope));
    }
    return out;
}

std::vector<std::pair<double, double>> project_tx(const WorldlineSet& ws, const std::vector<ThreeTimePoint>& points) {
    std::vector<std::pair<double, double>> out;
    for (const auto& t : points) {
        auto x = ws.position(t);
        double along = 0.0;
        for (int i = 0; i < 3; ++i) along += x[1 + i].real() * ws.n[i];
        out.emplace_back(along, x[0].real());
    }
    return out;
}

}  // namespace tritime::kinematics
