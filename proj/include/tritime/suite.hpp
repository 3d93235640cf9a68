#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tritime/catalog.hpp"
#include "tritime/fieldcheck.hpp"
#include "tritime/report.hpp"

namespace tritime::suite {

using catalog::ParticleState;
using fieldcheck::ResidualReport;

struct VerifyOptions {
    std::uint64_t seed = 1;
    int states = 50;                         // random on-shell states per sector
    std::uint64_t measure_samples = 1000000;
    int slit_configs = 20;
    int causality_pairs = 10000;
    int threads = 0;                         // 0 = hardware concurrency
};

/// Random on-shell states: m0 in [0.5, 2], p_i in [-1, 1] with |p3| >= 0.05.
/// With `vary_units`, hbar in [0.5, 1.5], kappa in [0.2, 2], R4 in [0.5, 2], n in 1..4.
std::vector<ParticleState> random_states(int count, std::uint64_t seed, bool vary_units = false);

/// A numeric candidate: the residual is already measured.
struct Measured {
    std::string label;
    double residual = 0.0;
    bool holds = false;
};

/// Verdict from the first candidate that holds; mirrors the symbolic sweep.
ResidualReport measured_claim(std::string id, std::string anchor, const std::vector<Measured>& candidates,
                              std::string notes = {});

std::vector<ResidualReport> geometry_claims(std::uint64_t seed);
/// Ricci scalar and quantum potential for the constant, Gaussian, product-of-sinusoids and two-bump amplitudes.
std::vector<ResidualReport> quantum_claims(std::uint64_t seed);
std::vector<ResidualReport> scalar_claims(const std::vector<ParticleState>& states, std::uint64_t seed);
std::vector<ResidualReport> quantize_claims();
std::vector<ResidualReport> vector_claims(const std::vector<ParticleState>& states, std::uint64_t seed);
std::vector<ResidualReport> fermion_claims(const std::vector<ParticleState>& states, std::uint64_t seed);
std::vector<ResidualReport> coupling_claims(const std::vector<ParticleState>& states, std::uint64_t seed);
std::vector<ResidualReport> worldline_claims(const std::vector<ParticleState>& states, std::uint64_t seed);
std::vector<ResidualReport> simulation_claims(const VerifyOptions& o);
std::vector<ResidualReport> spin_claims(std::uint64_t seed);

/// Every claim, aggregated by id.
report::Report run_verify(const VerifyOptions& o);

}  // namespace tritime::suite
