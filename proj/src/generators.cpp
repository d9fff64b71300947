#include "eplab/generators.hpp"

#include "eplab/pinv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eplab {

double Rng::uniform() {
    // 53-bit mantissa uniform in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw InvalidInput("Rng::uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
}

double Rng::gauss() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u clamped away from 0 so log stays finite.
    const double u = std::max(uniform(), 0x1.0p-60);
    const double v = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * std::numbers::pi * v;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

Complex Rng::cgauss() {
    const double re = gauss();
    const double im = gauss();
    return {re, im};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter) {
    // splitmix64 over a mixed state
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1) + 0xbf58476d1ce4e5b9ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Matrix rank_one(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw InvalidInput("rank_one: vectors must share dimension");
    if (x.norm() == 0.0 || y.norm() == 0.0) throw InvalidInput("rank_one: vectors must be nonzero");
    return x * y.adjoint();
}

Matrix involution_2x2() {
    Matrix s(2, 2);
    s << 2.0, 1.0, 0.0, -2.0;
    return s;
}

Matrix anchored_shift(double alpha, int n) {
    if (alpha == 0.0 || !std::isfinite(alpha)) throw InvalidInput("anchored_shift: alpha must be nonzero");
    if (n < 3 || n % 2 == 0)
        throw InvalidInput("anchored_shift: size must be odd and >= 3 so the action closes");
    Matrix s = Matrix::Zero(n, n);
    s(0, 0) = alpha;                                   // e1 -> alpha e1
    for (int k = 2; k <= n - 1; k += 2) s(k, k - 1) = alpha;  // e_{2p} -> alpha e_{2p+1}
    return s;
}

Matrix weighted_shift(const std::vector<double>& weights) {
    const int n = static_cast<int>(weights.size()) + 1;
    if (n < 2) throw InvalidInput("weighted_shift: need at least one weight");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("weighted_shift: weights must be positive");
    Matrix s = Matrix::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) s(k + 1, k) = weights[static_cast<std::size_t>(k)];
    return s;
}

namespace {

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
    Matrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = rng.cgauss();
    return a;
}

// Haar-distributed orthonormal columns via phase-fixed QR.
Matrix haar_frame(int rows, int cols, Rng& rng) {
    Matrix a = gaussian_matrix(rows, std::max(rows, cols), rng);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, rows);
    const Matrix r = qr.matrixQR();
    for (int j = 0; j < rows; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q.leftCols(cols);
}

void require_rank(int dim, int rank, const char* what) {
    if (rank < 0 || rank > dim)
        throw InvalidInput(std::string(what) + ": rank out of range [0, dim]");
}

}  // namespace

Matrix random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw InvalidInput("random_unitary: dim must be positive");
    Rng rng(seed);
    return haar_frame(dim, dim, rng);
}

Matrix random_normal(int dim, std::uint64_t seed) {
    if (dim < 1) throw InvalidInput("random_normal: dim must be positive");
    Rng rng(seed);
    const Matrix u = haar_frame(dim, dim, rng);
    Vector eigenvalues(dim);
    for (int i = 0; i < dim; ++i) {
        const double modulus = std::exp(rng.uniform(std::log(0.5), std::log(2.0)));
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        eigenvalues(i) = std::polar(modulus, phase);
    }
    return u * eigenvalues.asDiagonal() * u.adjoint();
}

Matrix random_projection(int dim, int rank, std::uint64_t seed) {
    if (dim < 1) throw InvalidInput("random_projection: dim must be positive");
    require_rank(dim, rank, "random_projection");
    Rng rng(seed);
    const Matrix u = haar_frame(dim, rank, rng);
    Matrix p = u * u.adjoint();
    if (p.size() == 0) p = Matrix::Zero(dim, dim);
    return p;
}

Matrix random_partial_isometry(int dim, int rank, std::uint64_t seed) {
    if (dim < 1) throw InvalidInput("random_partial_isometry: dim must be positive");
    require_rank(dim, rank, "random_partial_isometry");
    Rng rng(seed);
    const Matrix u = haar_frame(dim, rank, rng);
    const Matrix v = haar_frame(dim, rank, rng);
    Matrix t = u * v.adjoint();
    if (t.size() == 0) t = Matrix::Zero(dim, dim);
    return t;
}

Matrix random_general(int dim, int rank, std::uint64_t seed, double condition_cap) {
    if (dim < 1) throw InvalidInput("random_general: dim must be positive");
    require_rank(dim, rank, "random_general");
    if (!(condition_cap >= 1.0)) throw InvalidInput("random_general: condition_cap must be >= 1");
    Rng rng(seed);
    const Matrix u = haar_frame(dim, rank, rng);
    const Matrix v = haar_frame(dim, rank, rng);
    RealVector sigma(rank);
    for (int i = 0; i < rank; ++i)
        sigma(i) = i == 0 ? 1.0 : std::exp(-rng.uniform(0.0, std::log(condition_cap)));
    std::sort(sigma.data(), sigma.data() + rank, std::greater<double>());
    Matrix t = u * sigma.asDiagonal() * v.adjoint();
    if (t.size() == 0) t = Matrix::Zero(dim, dim);
    return t;
}

Matrix nonnormal_ep(int dim, std::uint64_t seed) {
    if (dim < 2) throw InvalidInput("nonnormal_ep: dim must be >= 2");
    const int block = dim == 2 ? 2 : dim - 1;  // 1x1 blocks are always normal
    // Condition of the block is kept small: theorem checkers take up to 6th
    // powers of these draws, and range-projector accuracy degrades like
    // eps * cond^power.
    for (int attempt = 0; attempt < 16; ++attempt) {
        const std::uint64_t sub = derive_seed(seed, 0xEF, static_cast<std::uint64_t>(attempt));
        const Matrix a = random_general(block, block, sub, 10.0);
        Matrix embedded = Matrix::Zero(dim, dim);
        embedded.topLeftCorner(block, block) = a;
        const Matrix t = unitary_conjugate(embedded, derive_seed(seed, 0xF0, static_cast<std::uint64_t>(attempt)));
        // Retry the rare draw without a clear non-normality margin; SD would
        // force normality for an EP operator, so it must be clearly absent too.
        const double normal_defect = rel_residual(t.adjoint() * t, t * t.adjoint());
        const Matrix dagger = pinv_matrix(t);
        const double sd_defect = rel_residual(t.adjoint() * dagger, dagger * t.adjoint());
        if (normal_defect > 1e-3 && sd_defect > 1e-4) return t;
    }
    throw InvalidInput("nonnormal_ep: failed to draw a non-normal block after 16 retries");
}

Matrix nilpotent_nep(int dim, int n, std::uint64_t seed) {
    if (dim < 1) throw InvalidInput("nilpotent_nep: dim must be positive");
    if (n < 1 || n > dim) throw InvalidInput("nilpotent_nep: need 1 <= n <= dim");
    Matrix block = Matrix::Zero(dim, dim);
    for (int i = 0; i + 1 < n; ++i) block(i + 1, i) = 1.0;
    return unitary_conjugate(block, derive_seed(seed, 0xA1, 0));
}

Matrix unitary_conjugate(const Matrix& t, std::uint64_t seed) {
    require_square(t, "unitary_conjugate");
    const Matrix u = random_unitary(static_cast<int>(t.rows()), seed);
    return u.adjoint() * t * u;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix s = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    s.topLeftCorner(a.rows(), a.cols()) = a;
    s.bottomRightCorner(b.rows(), b.cols()) = b;
    return s;
}

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names = {
        "zero",
        "identity",
        "rank_one",
        "rank_one_orthonormal",
        "rank_one_aligned",
        "involution_2x2",
        "anchored_shift",
        "const_shift",
        "random_weighted_shift",
        "random_normal",
        "singular_normal",
        "random_unitary",
        "random_projection",
        "random_partial_isometry",
        "random_general",
        "nonnormal_ep",
        "nilpotent_nep",
        "nhep_asym",
    };
    return names;
}

namespace {

Matrix singular_normal(int dim, std::uint64_t seed) {
    if (dim < 2) throw InvalidInput("singular_normal: dim must be >= 2");
    Rng rng(seed);
    const Matrix u = haar_frame(dim, dim, rng);
    Vector eigenvalues(dim);
    for (int i = 0; i + 1 < dim; ++i) {
        const double modulus = std::exp(rng.uniform(std::log(0.5), std::log(2.0)));
        eigenvalues(i) = std::polar(modulus, rng.uniform(0.0, 2.0 * std::numbers::pi));
    }
    eigenvalues(dim - 1) = 0.0;
    return u * eigenvalues.asDiagonal() * u.adjoint();
}

// 2-hypo-EP but not 2-EP: R(T^2) lies in R(T*) while R(T*^2) escapes R(T).
Matrix nhep_asym(int dim, std::uint64_t seed) {
    if (dim < 3) throw InvalidInput("nhep_asym: dim must be >= 3");
    Matrix core(3, 3);
    core << 0, 1, 0,
            0, 0, 0,
            0, 1, 1;
    Matrix embedded = Matrix::Zero(dim, dim);
    embedded.topLeftCorner(3, 3) = core;
    return unitary_conjugate(embedded, derive_seed(seed, 0xA7, 0));
}

}  // namespace

Matrix generate(const DrawSpec& spec) {
    const auto& f = spec.family;
    Rng rng(derive_seed(spec.seed, 0x11, 0));
    if (f == "zero") return Matrix::Zero(spec.dim, spec.dim);
    if (f == "identity") return Matrix::Identity(spec.dim, spec.dim);
    if (f == "rank_one") {
        Vector x(spec.dim), y(spec.dim);
        for (int i = 0; i < spec.dim; ++i) x(i) = rng.cgauss();
        for (int i = 0; i < spec.dim; ++i) y(i) = rng.cgauss();
        return rank_one(x, y);
    }
    if (f == "rank_one_orthonormal") {
        if (spec.dim < 2) throw InvalidInput("rank_one_orthonormal: dim must be >= 2");
        const Matrix frame = random_unitary(spec.dim, spec.seed);
        return rank_one(frame.col(0), frame.col(1));
    }
    if (f == "rank_one_aligned") {
        Vector x(spec.dim);
        for (int i = 0; i < spec.dim; ++i) x(i) = rng.cgauss();
        const Complex scale{rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0)};
        return rank_one(x, Vector(scale * x));
    }
    if (f == "involution_2x2") return involution_2x2();
    if (f == "anchored_shift") return anchored_shift(spec.alpha, spec.dim);
    if (f == "const_shift")
        return weighted_shift(std::vector<double>(static_cast<std::size_t>(spec.dim) - 1, spec.alpha));
    if (f == "random_weighted_shift") {
        std::vector<double> w(static_cast<std::size_t>(spec.dim) - 1);
        for (double& x : w) x = rng.uniform(0.5, 2.0);
        return weighted_shift(w);
    }
    if (f == "random_normal") return random_normal(spec.dim, spec.seed);
    if (f == "singular_normal") return singular_normal(spec.dim, spec.seed);
    if (f == "random_unitary") return random_unitary(spec.dim, spec.seed);
    if (f == "random_projection") return random_projection(spec.dim, spec.rank, spec.seed);
    if (f == "random_partial_isometry") return random_partial_isometry(spec.dim, spec.rank, spec.seed);
    if (f == "random_general")
        return random_general(spec.dim, spec.rank, spec.seed,
                              spec.condition_cap > 0 ? spec.condition_cap : 1e6);
    if (f == "nonnormal_ep") return nonnormal_ep(spec.dim, spec.seed);
    if (f == "nilpotent_nep") return nilpotent_nep(spec.dim, spec.n, spec.seed);
    if (f == "nhep_asym") return nhep_asym(spec.dim, spec.seed);
    throw InvalidInput("generate: unknown family " + f);
}

void EnsembleConfig::validate() const {
    if (dims.empty()) throw InvalidInput("EnsembleConfig: dims must be nonempty");
    for (int d : dims)
        if (d < 2) throw InvalidInput("EnsembleConfig: dims must be >= 2");
    if (trials_per_family < 0) throw InvalidInput("EnsembleConfig: trials must be >= 0");
    if (n_max < 1) throw InvalidInput("EnsembleConfig: n_max must be >= 1");
    if (!(condition_cap > 1.0)) throw InvalidInput("EnsembleConfig: condition_cap must be > 1");
    for (const auto& f : families)
        if (std::find(family_names().begin(), family_names().end(), f) == family_names().end())
            throw InvalidInput("EnsembleConfig: unknown family " + f);
}

}  // namespace eplab
