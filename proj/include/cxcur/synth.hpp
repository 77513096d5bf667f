#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cxcur/matrix.hpp"

namespace cxcur {

enum class SpectrumKind { Flat, Geometric, Custom };

/// Recipe for A = U diag(s) V^T + noise_level * G / sqrt(m n).
struct SynthSpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t target_rank = 0;
    SpectrumKind spectrum = SpectrumKind::Flat;
    double ratio = 0.5;                 ///< geometric decay per step
    std::vector<double> custom_values;  ///< length target_rank for Custom
    double noise_level = 0.0;
    std::uint64_t seed = 0;
};

/// Throws InputError on an invalid recipe (rank 0, rank > min(m, n), negative
/// noise, ratio outside (0, 1], custom list of the wrong length or with
/// negative entries).
void validate(const SynthSpec& spec);

/// The target_rank planted singular values, nonincreasing for Flat and Geometric.
std::vector<double> planted_spectrum(const SynthSpec& spec);

DenseMatrix synth(const SynthSpec& spec);

/// rows x cols matrix of independent standard normals.
DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// rows x k matrix with orthonormal columns (Q factor of a Gaussian matrix).
DenseMatrix random_orthonormal(std::size_t rows, std::size_t k, std::uint64_t seed);

/// Parses "flat", "geometric:<ratio>" or "custom:<v1>,<v2>,...".
void parse_spectrum(const std::string& text, SynthSpec& spec);

}  // namespace cxcur
