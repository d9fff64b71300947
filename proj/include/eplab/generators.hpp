#pragma once

#include "eplab/matrix.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace eplab {

/// Deterministic stream of uniforms/Gaussians. The Gaussian transform is
/// hand-rolled (Box-Muller on 53-bit uniforms) so draws are bit-identical for
/// a given seed independent of the standard library's distribution details.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform();                    // [0, 1)
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);     // inclusive bounds
    double gauss();
    Complex cgauss();

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Counter-mixed subseed derivation (splitmix64), so per-trial streams are
/// independent and replayable from the master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter);

// -- Fixed structured families ------------------------------------------------

/// (x (x) y) z = <z,y> x, i.e. the matrix x y*.
Matrix rank_one(const Vector& x, const Vector& y);

/// [[2,1],[0,-2]]: S^2 = 4I, so S is EP (S^dagger = S/4) but not normal.
Matrix involution_2x2();

/// Shift anchored at e1: S e1 = alpha e1, S e_{2p} = alpha e_{2p+1},
/// S e_{2p+1} = 0. Requires odd n >= 3 so the action closes exactly; then
/// S^dagger = S*/alpha^2 and S^k = alpha^k e1 e1* for k >= 2.
Matrix anchored_shift(double alpha, int n);

/// Truncated weighted shift: S e_k = weights[k] e_{k+1}, e_N -> 0.
/// weights.size() = N-1 for an N x N matrix; all weights positive.
Matrix weighted_shift(const std::vector<double>& weights);

// -- Random families (Haar-style draws, deterministic per seed) ---------------

Matrix random_unitary(int dim, std::uint64_t seed);
Matrix random_normal(int dim, std::uint64_t seed);
Matrix random_projection(int dim, int rank, std::uint64_t seed);
Matrix random_partial_isometry(int dim, int rank, std::uint64_t seed);
Matrix random_general(int dim, int rank, std::uint64_t seed, double condition_cap = 1e6);

/// EP but (verified, with retry) not normal: U*(A + 0)U with A invertible
/// non-normal on a corner block, so R(T) = R(T*) by construction.
Matrix nonnormal_ep(int dim, std::uint64_t seed);

/// A partial isometry with T^n = 0, T^{n-1} != 0 (an embedded unweighted
/// shift chain of length n under unitary conjugation): NEP(n) holds,
/// NEP(n-1) fails for n >= 2.
Matrix nilpotent_nep(int dim, int n, std::uint64_t seed);

Matrix unitary_conjugate(const Matrix& t, std::uint64_t seed);
Matrix direct_sum(const Matrix& a, const Matrix& b);

// -- Named-draw machinery ------------------------------------------------------

/// Replayable generation provenance: `generate` is a pure function of this.
struct DrawSpec {
    std::string family;
    int dim = 0;
    int n = 0;       // order parameter where the family needs one
    int rank = 0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    double condition_cap = 0.0;

    bool operator==(const DrawSpec&) const = default;
};

/// All families addressable by name (drives `gen`, witness search and the
/// theorem-suite populations).
const std::vector<std::string>& family_names();

/// Draws the named family; every parameter is carried explicitly, so equal
/// DrawSpecs give bit-identical matrices.
Matrix generate(const DrawSpec& spec);

/// Ensemble-wide configuration for suite runs.
struct EnsembleConfig {
    std::uint64_t master_seed = 42;
    std::vector<int> dims = {2, 3, 4, 5, 6, 7, 8, 9, 10};
    int trials_per_family = 50;
    std::vector<std::string> families = family_names();
    int n_max = 4;
    double condition_cap = 1e6;

    void validate() const;
};

}  // namespace eplab
