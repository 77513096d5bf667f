#include <doctest.h>

#include "cxcur/errors.hpp"
#include "cxcur/linalg.hpp"
#include "cxcur/synth.hpp"

using namespace cxcur;

TEST_CASE("flat noiseless spectrum has exact rank") {
    SynthSpec spec;
    spec.rows = 12;
    spec.cols = 9;
    spec.target_rank = 3;
    spec.seed = 5;
    const DenseMatrix a = synth(spec);
    const Vector s = singular_values(a);
    CHECK(s(0) == doctest::Approx(1.0));
    CHECK(s(1) == doctest::Approx(1.0));
    CHECK(s(2) == doctest::Approx(1.0));
    CHECK(s(3) < 1e-14);
    CHECK(numerical_rank(a) == 3);
}

TEST_CASE("geometric spectrum is recovered") {
    SynthSpec spec;
    spec.rows = 20;
    spec.cols = 15;
    spec.target_rank = 5;
    spec.spectrum = SpectrumKind::Geometric;
    spec.ratio = 0.5;
    spec.seed = 6;
    const TruncatedSVD s = svd_truncated(synth(spec), 5);
    const double expected[] = {1, 0.5, 0.25, 0.125, 0.0625};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(s.sigma(i) - expected[i]) <= 1e-6);
    }
}

TEST_CASE("noise and determinism") {
    SynthSpec spec;
    spec.rows = 30;
    spec.cols = 20;
    spec.target_rank = 4;
    spec.noise_level = 0.1;
    spec.seed = 7;
    const DenseMatrix a = synth(spec);
    CHECK(synth(spec) == a);
    CHECK(numerical_rank(a) == 20);
    spec.noise_level = 0.0;
    const double noise_norm = (a - synth(spec)).norm();
    CHECK(noise_norm == doctest::Approx(0.1).epsilon(0.1));
    spec.seed = 8;
    CHECK_FALSE(synth(spec) == a);
}

TEST_CASE("custom spectra and spectrum strings") {
    SynthSpec spec;
    spec.rows = 6;
    spec.cols = 6;
    spec.target_rank = 2;
    parse_spectrum("custom:3,0.5", spec);
    CHECK(spec.spectrum == SpectrumKind::Custom);
    const Vector s = singular_values(synth(spec));
    CHECK(s(0) == doctest::Approx(3.0));
    CHECK(s(1) == doctest::Approx(0.5));

    parse_spectrum("geometric:0.25", spec);
    CHECK(spec.spectrum == SpectrumKind::Geometric);
    CHECK(spec.ratio == 0.25);
    parse_spectrum("flat", spec);
    CHECK(spec.spectrum == SpectrumKind::Flat);
    CHECK_THROWS_AS(parse_spectrum("custom:1,x", spec), InputError);
    CHECK_THROWS_AS(parse_spectrum("spiky", spec), InputError);
}

TEST_CASE("invalid recipes") {
    SynthSpec spec;
    spec.rows = 5;
    spec.cols = 4;
    spec.target_rank = 0;
    CHECK_THROWS_AS(synth(spec), InputError);
    spec.target_rank = 5;
    CHECK_THROWS_AS(synth(spec), InputError);
    spec.target_rank = 2;
    spec.noise_level = -1.0;
    CHECK_THROWS_AS(synth(spec), InputError);
    spec.noise_level = 0.0;
    spec.spectrum = SpectrumKind::Custom;
    spec.custom_values = {1.0};
    CHECK_THROWS_AS(synth(spec), InputError);
    spec.spectrum = SpectrumKind::Geometric;
    spec.ratio = 1.5;
    CHECK_THROWS_AS(synth(spec), InputError);
}

TEST_CASE("random_orthonormal has orthonormal columns") {
    const DenseMatrix q = random_orthonormal(10, 4, 3);
    CHECK((q.transpose() * q - DenseMatrix::Identity(4, 4)).norm() < 1e-13);
}
