#include "lsvc/dpi.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <string>

#include "lsvc/error.hpp"

namespace lsvc {
namespace {

constexpr double kRowTolerance = 1e-12;
constexpr double kDpiSlack = 1e-9;

void check_rows(const StochasticMatrix& m, std::size_t rows, const char* name) {
  if (m.size() != rows) throw DataError(std::string(name) + ": wrong number of rows");
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  if (cols == 0 || cols > kMaxAlphabet) throw DataError(std::string(name) + ": alphabet size must be 1..8");
  for (const auto& row : m) {
    if (row.size() != cols) throw DataError(std::string(name) + ": ragged matrix");
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0) || p > 1.0) throw DataError(std::string(name) + ": entry outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) throw DataError(std::string(name) + ": row does not sum to 1");
  }
}

double mutual_information(const std::vector<std::vector<double>>& joint) {
  std::vector<double> pa(joint.size(), 0.0);
  std::vector<double> pb(joint.front().size(), 0.0);
  for (std::size_t i = 0; i < joint.size(); ++i) {
    for (std::size_t j = 0; j < pb.size(); ++j) {
      pa[i] += joint[i][j];
      pb[j] += joint[i][j];
    }
  }
  double mi = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    for (std::size_t j = 0; j < pb.size(); ++j) {
      const double p = joint[i][j];
      if (p > 0.0) mi += p * std::log2(p / (pa[i] * pb[j]));
    }
  }
  return mi;
}

std::vector<double> random_distribution(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (auto& v : p) v = e(rng);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= s;
  // Push the rounding residue into the largest entry so the row sums to 1.
  const double residue = 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
  *std::max_element(p.begin(), p.end()) += residue;
  return p;
}

}  // namespace

void validate_chain(const MarkovChain& c) {
  if (c.p_x.empty() || c.p_x.size() > kMaxAlphabet) throw DataError("p_x: alphabet size must be 1..8");
  check_rows({c.p_x}, 1, "p_x");
  check_rows(c.y_given_x, c.p_x.size(), "y_given_x");
  check_rows(c.xhat_given_y, c.y_given_x.front().size(), "xhat_given_y");
  check_rows(c.t_given_xhat, c.xhat_given_y.front().size(), "t_given_xhat");
}

DpiReport dpi_check(const MarkovChain& c) {
  validate_chain(c);
  const std::size_t nx = c.p_x.size();
  const std::size_t ny = c.y_given_x.front().size();
  const std::size_t nh = c.xhat_given_y.front().size();
  const std::size_t nt = c.t_given_xhat.front().size();

  std::vector<std::vector<double>> y_xhat(ny, std::vector<double>(nh, 0.0));
  std::vector<std::vector<double>> y_t(ny, std::vector<double>(nt, 0.0));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t h = 0; h < nh; ++h) {
        for (std::size_t t = 0; t < nt; ++t) {
          const double p = c.p_x[x] * c.y_given_x[x][y] * c.xhat_given_y[y][h] * c.t_given_xhat[h][t];
          y_xhat[y][h] += p;
          y_t[y][t] += p;
        }
      }
    }
  }
  DpiReport r;
  r.i_y_xhat = mutual_information(y_xhat);
  r.i_y_t = mutual_information(y_t);
  r.holds = r.i_y_xhat >= r.i_y_t - kDpiSlack;
  return r;
}

MarkovChain random_chain(std::mt19937_64& rng, int max_alphabet) {
  if (max_alphabet < 1 || max_alphabet > kMaxAlphabet) throw DataError("alphabet bound must be 1..8");
  std::uniform_int_distribution<int> size(1, max_alphabet);
  const int nx = size(rng);
  const int ny = size(rng);
  const int nh = size(rng);
  const int nt = size(rng);
  auto matrix = [&](int rows, int cols) {
    StochasticMatrix m;
    for (int i = 0; i < rows; ++i) m.push_back(random_distribution(rng, cols));
    return m;
  };
  return {random_distribution(rng, nx), matrix(nx, ny), matrix(ny, nh), matrix(nh, nt)};
}

}  // namespace lsvc
