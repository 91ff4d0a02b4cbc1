#pragma once

#include <sys/wait.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "parafis/rng.hpp"
#include "parafis/types.hpp"

namespace testutil {

using parafis::Matrix;
using parafis::Vector;

class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t bound) { return gen_.next_below(bound); }
  double unit() { return gen_.next_unit(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  double gaussian() {
    const double u1 = std::max(unit(), 1e-300);
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Vector vector(int n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  Vector gaussian_vector(int n, const Vector& mean, double sigma) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = mean(i) + sigma * gaussian();
    return v;
  }

  Matrix gaussian_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = gaussian();
    return m;
  }

  // Random orthogonal matrix with determinant +1.
  Matrix rotation(int n) {
    Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, n));
    Matrix q = qr.householderQ();
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q;
  }

  // Symmetric positive definite with eigenvalues in [min_eig, max_eig].
  Matrix pd_matrix(int n, double min_eig = 0.3, double max_eig = 3.0) {
    const Matrix q = rotation(n);
    Vector eigs(n);
    for (int i = 0; i < n; ++i) eigs(i) = uniform(min_eig, max_eig);
    return q * eigs.asDiagonal() * q.transpose();
  }

 private:
  parafis::SplitMix64 gen_;
};

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::uint64_t counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("parafis-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs a shell command with `dir` as working directory, capturing streams.
inline CommandResult run_command(const std::string& command, const std::filesystem::path& dir) {
  const auto out_path = dir / "_stdout.txt";
  const auto err_path = dir / "_stderr.txt";
  const std::string full = "cd '" + dir.string() + "' && " + command + " > '" + out_path.string() +
                           "' 2> '" + err_path.string() + "'";
  const int status = std::system(full.c_str());
  CommandResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

// Interleaved 2-D gaussian blobs, label in the last column; class k sits on a
// circle of radius 5. First-occurrence order of labels is c0, c1, ...
inline std::string gaussian_blobs_csv(int classes, int per_class, double sigma,
                                      std::uint64_t seed) {
  TestRng rng(seed);
  std::ostringstream out;
  out.precision(17);
  for (int i = 0; i < per_class; ++i)
    for (int k = 0; k < classes; ++k) {
      const double angle = 2.0 * M_PI * k / classes;
      out << 5.0 * std::cos(angle) + sigma * rng.gaussian() << ','
          << 5.0 * std::sin(angle) + sigma * rng.gaussian() << ",c" << k << '\n';
    }
  return out.str();
}

}  // namespace testutil
