#pragma once

// Random ensembles (states, observables, unitaries) and the property-suite
// runner that certifies every claim of the library as a falsifiable batch
// check. Each registered property owns its analytic tolerance; counterexample
// seeds are recorded verbatim so failures replay deterministically.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qskew/qmat.hpp"

namespace qskew {

/// Haar-random pure state from a normalized complex Gaussian vector.
DensityMatrix haar_pure(int d, std::uint64_t seed);

/// Hilbert-Schmidt-style mixed state via the Ginibre construction
/// G G^dag / Tr[G G^dag] with G of size d x rank.
DensityMatrix hs_random_density(int d, int rank, std::uint64_t seed);

/// Gaussian Hermitian ensemble, or U diag(spectrum) U^dag with Haar U when a
/// spectrum is supplied.
Observable random_observable(int d, std::uint64_t seed,
                             const std::optional<RealVector>& spectrum = std::nullopt);

/// Haar-random unitary (QR of a Ginibre matrix with phase-fixed R diagonal).
Matrix random_unitary(int d, std::uint64_t seed);

struct PropertyFailure {
    std::uint64_t seed = 0;
    double violation = 0.0;
};

struct PropertyReport {
    std::string name;
    std::string suite;
    long trials = 0;
    std::vector<PropertyFailure> failures;
    double max_violation = 0.0;
    bool pass = false;  // pass <=> failures empty
    bool negative_control = false;
};

struct Property {
    std::string name;
    std::string suite;
    double tolerance = 0.0;
    bool negative_control = false;
    /// Heavy properties divide the requested trial count by this factor.
    long trial_divisor = 1;
    /// Returns the violation magnitude for one trial (<= tolerance passes).
    std::function<double(std::uint64_t trial_seed, const std::vector<int>& dims)> run;
};

/// The full registry; every invariant of the other modules appears exactly
/// once (asserted in the test suite).
const std::vector<Property>& property_registry();

/// Suites: "core", "inequalities", "monotonicity", "protocols",
/// "supplement", "shots", "negative", and "default" (all but negative).
std::vector<std::string> suite_names();

/// Runs the registered invariants of a suite. Trials are independent and
/// partitionable by seed; `jobs` > 1 splits them across threads with results
/// identical to a serial run.
std::vector<PropertyReport> run_property_suite(const std::string& suite, long trials,
                                               const std::vector<int>& dims,
                                               std::uint64_t seed, int jobs = 1);

bool all_pass(const std::vector<PropertyReport>& reports);

}  // namespace qskew
