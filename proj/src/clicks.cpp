#include "quasiphase/clicks.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "quasiphase/quadrature.hpp"

namespace quasiphase {

DetectionConfig DetectionConfig::balanced(int n_detectors, double eta, double t, double z) {
    DetectionConfig cfg;
    cfg.n_detectors = n_detectors;
    cfg.eta = eta;
    cfg.t = t;
    cfg.r = std::sqrt(1.0 - t * t);
    cfg.z = z;
    cfg.validate();
    return cfg;
}

void DetectionConfig::validate() const {
    if (n_detectors < 1 || (n_detectors & (n_detectors - 1)) != 0)
        throw std::invalid_argument("detector count must be a power of two");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("efficiency must lie in (0,1]");
    if (std::abs(t * t + r * r - 1.0) > 1e-12)
        throw std::invalid_argument("beam-splitter amplitudes must satisfy t^2 + r^2 = 1");
}

double g_vac(cplx alpha, const DetectionConfig& cfg) {
    cfg.validate();
    const double no_click = std::exp(-cfg.eta * cfg.r * cfg.r * std::norm(alpha) / cfg.n_detectors);
    return std::pow(no_click + cfg.z * (1.0 - no_click), cfg.n_detectors);
}

cplx q_shift(cplx alpha, cplx bra, cplx ket, const DetectionConfig& cfg) {
    if (cfg.r == 0.0) throw std::invalid_argument("q_shift undefined for r = 0");
    const double scale = cfg.t / cfg.r;
    const cplx d_re = cplx(alpha.real()) - scale * 0.5 * (ket + std::conj(bra));
    const cplx d_im = cplx(alpha.imag()) - scale * (ket - std::conj(bra)) / cplx(0.0, 2.0);
    return d_re * d_re + d_im * d_im;
}

cplx g_interference(cplx alpha, cplx bra, cplx ket, const DetectionConfig& cfg) {
    cfg.validate();
    const cplx q = q_shift(alpha, bra, ket, cfg);
    const cplx base =
        cfg.z + (1.0 - cfg.z) * std::exp(-cfg.eta * cfg.r * cfg.r * q / cplx(cfg.n_detectors));
    return overlap(bra, ket) * std::pow(base, cfg.n_detectors);
}

double g_state(const CoherentSuperposition& state, cplx alpha, const DetectionConfig& cfg) {
    state.validate();
    if (!state.normalized) throw std::invalid_argument("g_state needs a normalized state");
    cplx total = 0.0;
    for (const auto& k : state.terms)
        for (const auto& l : state.terms)
            total += k.weight * std::conj(l.weight) *
                     g_interference(alpha, l.amplitude, k.amplitude, cfg);
    if (std::abs(total.imag()) > 1e-10)
        throw tolerance_error("imaginary residual above 1e-10 in click generating function");
    return total.real();
}

double fock_click_oracle(const DensityMatrix& rho, cplx alpha, const DetectionConfig& cfg) {
    cfg.validate();
    // sign convention fixed so coherent inputs land on the closed form:
    // flip the signal, attenuate by t^2, then displace by r*alpha
    DensityMatrix detected = displace(loss_channel(phase_flip(rho), cfg.t * cfg.t), cfg.r * alpha);
    const int dim = detected.dim();
    const int n = cfg.n_detectors;
    std::vector<double> populations(dim);
    for (int i = 0; i < dim; ++i) populations[i] = detected.entries(i, i).real();

    double total = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        const double x = 1.0 - k * cfg.eta / n;
        double moment = 0.0;
        double xn = 1.0;
        for (int i = 0; i < dim; ++i) {
            moment += populations[i] * xn;
            xn *= x;
        }
        total += binom * std::pow(cfg.z, n - k) * std::pow(1.0 - cfg.z, k) * moment;
        binom = binom * (n - k) / (k + 1);
    }
    return total;
}

double thermal_g_quadrature(double nbar, cplx alpha, const DetectionConfig& cfg, int order) {
    if (!(nbar > 0)) throw std::invalid_argument("thermal mean photon number must be > 0");
    cfg.validate();
    static thread_local int cached_order = 0;
    static thread_local QuadRule rule;
    if (cached_order != order) {
        rule = gauss_hermite(order);
        cached_order = order;
    }
    const double scale = std::sqrt(nbar);
    const double shift = cfg.t / cfg.r;
    double total = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        double row = 0.0;
        for (size_t j = 0; j < rule.nodes.size(); ++j) {
            const cplx sample(scale * rule.nodes[j], scale * rule.nodes[i]);
            row += rule.weights[j] * g_vac(alpha - shift * sample, cfg);
        }
        total += rule.weights[i] * row;
    }
    return total / kPi;
}

ClassicalState ClassicalState::coherent(cplx beta) {
    ClassicalState s;
    s.components = {{1.0, false, beta, 0.0}};
    return s;
}

ClassicalState ClassicalState::thermal(double nbar) {
    ClassicalState s;
    s.components = {{1.0, true, cplx(0.0), nbar}};
    return s;
}

ClassicalState ClassicalState::mixture(std::vector<Component> components) {
    ClassicalState s;
    s.components = std::move(components);
    s.validate();
    return s;
}

void ClassicalState::validate() const {
    if (components.empty()) throw std::invalid_argument("classical state needs components");
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.weight >= 0.0))
            throw std::invalid_argument("nonclassical input: mixture weights must be >= 0");
        if (c.thermal && !(c.nbar > 0.0))
            throw std::invalid_argument("thermal component needs nbar > 0");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("mixture weights must sum to 1");
}

namespace {

// splitmix64 finalizer; per-shot streams are seeded by mixing the run seed
// with the shot index, making every shot reproducible in isolation.
uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct ShotStream {
    uint64_t state;
    ShotStream(uint64_t seed, uint64_t shot) : state(mix64(seed ^ mix64(shot + 1))) {}
    uint64_t next_u64() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
    double normal_pair(double& second) {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * kPi * uniform();
        second = r * std::sin(phi);
        return r * std::cos(phi);
    }
};

double run_shot(const ClassicalState& state, cplx alpha, const DetectionConfig& cfg,
                uint64_t seed, long long shot) {
    ShotStream rng(seed, static_cast<uint64_t>(shot));
    cplx sample;
    if (state.components.size() == 1) {
        sample = state.components[0].thermal ? cplx(0.0) : state.components[0].beta;
        if (state.components[0].thermal) {
            double im;
            const double re = rng.normal_pair(im);
            sample = std::sqrt(state.components[0].nbar / 2.0) * cplx(re, im);
        }
    } else {
        double pick = rng.uniform();
        const ClassicalState::Component* chosen = &state.components.back();
        for (const auto& c : state.components) {
            if (pick < c.weight) {
                chosen = &c;
                break;
            }
            pick -= c.weight;
        }
        if (chosen->thermal) {
            double im;
            const double re = rng.normal_pair(im);
            sample = std::sqrt(chosen->nbar / 2.0) * cplx(re, im);
        } else {
            sample = chosen->beta;
        }
    }
    const double intensity = std::norm(cfg.r * alpha - cfg.t * sample);
    const double p_click = -std::expm1(-cfg.eta * intensity / cfg.n_detectors);
    int clicks = 0;
    for (int i = 0; i < cfg.n_detectors; ++i)
        if (rng.uniform() < p_click) ++clicks;
    return std::pow(cfg.z, clicks);
}

}  // namespace

MonteCarloEstimate monte_carlo_g(const ClassicalState& state, cplx alpha,
                                 const DetectionConfig& cfg, long long shots, uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("need at least one shot");
    state.validate();
    cfg.validate();

    // fixed chunking, reduced in chunk order: totals do not depend on the
    // worker count
    constexpr long long kChunk = 8192;
    const long long chunks = (shots + kChunk - 1) / kChunk;
    std::vector<double> sums(chunks, 0.0), sq_sums(chunks, 0.0);

    auto run_chunk = [&](long long c) {
        const long long begin = c * kChunk;
        const long long end = std::min(shots, begin + kChunk);
        double s = 0.0, s2 = 0.0;
        for (long long shot = begin; shot < end; ++shot) {
            const double v = run_shot(state, alpha, cfg, seed, shot);
            s += v;
            s2 += v * v;
        }
        sums[c] = s;
        sq_sums[c] = s2;
    };

    const int workers = std::min<long long>(max_threads(), chunks);
    if (workers <= 1) {
        for (long long c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int wkr = 0; wkr < workers; ++wkr) {
            pool.emplace_back([&, wkr] {
                for (long long c = wkr; c < chunks; c += workers) run_chunk(c);
            });
        }
        for (auto& th : pool) th.join();
    }

    double sum = 0.0, sq = 0.0;
    for (long long c = 0; c < chunks; ++c) {
        sum += sums[c];
        sq += sq_sums[c];
    }
    MonteCarloEstimate est;
    est.shots = shots;
    est.value = sum / shots;
    if (shots > 1) {
        const double var = std::max(0.0, (sq - shots * est.value * est.value) / (shots - 1));
        est.std_error = std::sqrt(var / shots);
    }
    return est;
}

}  // namespace quasiphase
