#pragma once

// Test-only oracles, kept independent of the library's SVD-based paths:
// rank and null spaces come from Gaussian elimination with partial pivoting.

#include "eplab/matrix.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

namespace oracles {

using eplab::Complex;
using eplab::Matrix;
using eplab::Vector;

// Row-echelon rank by elimination with partial pivoting.
inline int elimination_rank(Matrix a, double tol = 1e-10) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    int rank = 0;
    const int rows = static_cast<int>(a.rows());
    const int cols = static_cast<int>(a.cols());
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = rank;
        for (int r = rank + 1; r < rows; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) <= tol * scale) continue;
        a.row(pivot).swap(a.row(rank));
        for (int r = rank + 1; r < rows; ++r) {
            const Complex factor = a(r, col) / a(rank, col);
            a.row(r) -= factor * a.row(rank);
        }
        ++rank;
    }
    return rank;
}

// Orthonormal basis of N(A) via elimination on [A; I] bookkeeping:
// solve for free columns of the echelon form.
inline std::vector<Vector> null_basis(const Matrix& a, double tol = 1e-10) {
    const int rows = static_cast<int>(a.rows());
    const int cols = static_cast<int>(a.cols());
    Matrix m = a;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = rank;
        for (int r = rank + 1; r < rows; ++r)
            if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
        if (std::abs(m(pivot, col)) <= tol * scale) continue;
        m.row(pivot).swap(m.row(rank));
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const Complex factor = m(r, col) / m(rank, col);
            m.row(r) -= factor * m.row(rank);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<Vector> basis;
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        Vector v = Vector::Zero(cols);
        v(free) = 1.0;
        for (int r = 0; r < rank; ++r)
            v(pivot_col[static_cast<std::size_t>(r)]) = -m(r, free) / m(r, pivot_col[static_cast<std::size_t>(r)]);
        basis.push_back(v / v.norm());
    }
    return basis;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

// Runs a shell command, capturing stdout.
inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
    if (!pipe) return result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe.get())) > 0)
        result.output.append(buffer.data(), got);
    const int status = pclose(pipe.release());
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

inline std::string temp_path(const std::string& name) {
    return "/tmp/eplab_test_" + name;
}

}  // namespace oracles
