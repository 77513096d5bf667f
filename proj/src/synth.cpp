#include "cxcur/synth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cxcur/errors.hpp"
#include "cxcur/rng.hpp"

namespace cxcur {

void validate(const SynthSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1) {
        throw InputError("synthetic matrix needs at least one row and one column");
    }
    if (spec.target_rank < 1 || spec.target_rank > std::min(spec.rows, spec.cols)) {
        throw InputError("target rank must lie in [1, min(rows, cols)]");
    }
    if (!(spec.noise_level >= 0.0) || !std::isfinite(spec.noise_level)) {
        throw InputError("noise level must be finite and nonnegative");
    }
    if (spec.spectrum == SpectrumKind::Geometric && !(spec.ratio > 0.0 && spec.ratio <= 1.0)) {
        throw InputError("geometric ratio must lie in (0, 1]");
    }
    if (spec.spectrum == SpectrumKind::Custom) {
        if (spec.custom_values.size() != spec.target_rank) {
            throw InputError("custom spectrum needs exactly target_rank values");
        }
        for (double v : spec.custom_values) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw InputError("custom singular values must be finite and nonnegative");
            }
        }
    }
}

std::vector<double> planted_spectrum(const SynthSpec& spec) {
    validate(spec);
    switch (spec.spectrum) {
        case SpectrumKind::Flat:
            return std::vector<double>(spec.target_rank, 1.0);
        case SpectrumKind::Geometric: {
            std::vector<double> s(spec.target_rank);
            double v = 1.0;
            for (auto& x : s) {
                x = v;
                v *= spec.ratio;
            }
            return s;
        }
        case SpectrumKind::Custom:
            return spec.custom_values;
    }
    return {};
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    DenseMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        g.data()[i] = rng.normal();
    }
    return g;
}

DenseMatrix random_orthonormal(std::size_t rows, std::size_t k, std::uint64_t seed) {
    const Eigen::MatrixXd g = gaussian_matrix(rows, k, seed);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(g.rows(), kk);
    // Sign convention: diag(R) >= 0.
    const Eigen::MatrixXd r = qr.matrixQR().topRows(kk).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < kk; ++j) {
        if (r(j, j) < 0.0) {
            q.col(j) = -q.col(j);
        }
    }
    return q;
}

DenseMatrix synth(const SynthSpec& spec) {
    const std::vector<double> s = planted_spectrum(spec);
    const DenseMatrix u = random_orthonormal(spec.rows, spec.target_rank,
                                             derive_seed(spec.seed, kBasisStream));
    const DenseMatrix v = random_orthonormal(spec.cols, spec.target_rank,
                                             derive_seed(spec.seed, kBasisStream + 1));
    const Eigen::Map<const Vector> sv(s.data(), static_cast<Eigen::Index>(s.size()));
    DenseMatrix a = u * sv.asDiagonal() * v.transpose();
    if (spec.noise_level > 0.0) {
        const double scale =
            spec.noise_level / std::sqrt(static_cast<double>(spec.rows * spec.cols));
        a += scale * gaussian_matrix(spec.rows, spec.cols, derive_seed(spec.seed, kNoiseStream));
    }
    return a;
}

void parse_spectrum(const std::string& text, SynthSpec& spec) {
    if (text == "flat") {
        spec.spectrum = SpectrumKind::Flat;
        return;
    }
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (kind == "geometric") {
            spec.spectrum = SpectrumKind::Geometric;
            if (!rest.empty()) {
                spec.ratio = std::stod(rest);
            }
            return;
        }
        if (kind == "custom" && !rest.empty()) {
            spec.spectrum = SpectrumKind::Custom;
            spec.custom_values.clear();
            std::stringstream ss(rest);
            std::string item;
            while (std::getline(ss, item, ',')) {
                spec.custom_values.push_back(std::stod(item));
            }
            return;
        }
    } catch (const std::logic_error&) {
        throw InputError("malformed spectrum '" + text + "'");
    }
    throw InputError("spectrum must be 'flat', 'geometric:<ratio>' or 'custom:<v1>,<v2>,...'");
}

}  // namespace cxcur
